#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "astaxon/classes.hpp"

namespace astaxon {

// One AS with its six attributes: the preprocessed description plus five
// non-negative integer scalars.
struct AsRecord {
    std::uint32_t asn = 0;
    std::vector<std::string> description_terms;
    std::uint32_t customers = 0;
    std::uint32_t providers = 0;
    std::uint32_t peers = 0;
    std::uint32_t prefixes = 0;
    std::uint32_t space = 0;

    bool operator==(const AsRecord&) const = default;
};

struct LabeledExample {
    AsRecord record;
    AsClass label = AsClass::LargeIsp;
};

// The five scalar attributes, in the fixed tie-break order used by the
// weak-hypothesis search (description sorts before all of them).
enum class ScalarAttribute : std::uint8_t {
    Customers = 0,
    Providers = 1,
    Peers = 2,
    Prefixes = 3,
    Space = 4,
};

inline constexpr std::size_t kScalarAttributeCount = 5;

constexpr std::array<ScalarAttribute, kScalarAttributeCount> all_scalar_attributes() {
    return {ScalarAttribute::Customers, ScalarAttribute::Providers, ScalarAttribute::Peers,
            ScalarAttribute::Prefixes, ScalarAttribute::Space};
}

std::uint32_t scalar_value(const AsRecord& rec, ScalarAttribute attr);

std::string_view attribute_name(ScalarAttribute attr);
std::optional<ScalarAttribute> attribute_from_name(std::string_view name);

} // namespace astaxon
