#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>

namespace astaxon {

// The six-way taxonomy. Ordinals are stable: they index score arrays and
// appear in every serialized format.
enum class AsClass : std::uint8_t {
    LargeIsp = 0,
    SmallIsp = 1,
    CustomerAs = 2,
    University = 3,
    Ixp = 4,
    Nic = 5,
};

inline constexpr std::size_t kClassCount = 6;

constexpr std::size_t ordinal(AsClass c) { return static_cast<std::size_t>(c); }

constexpr AsClass class_from_ordinal(std::size_t i) { return static_cast<AsClass>(i); }

constexpr std::array<AsClass, kClassCount> all_classes() {
    return {AsClass::LargeIsp, AsClass::SmallIsp, AsClass::CustomerAs,
            AsClass::University, AsClass::Ixp, AsClass::Nic};
}

// ASCII tokens used in dataset, model and prediction files.
std::string_view class_token(AsClass c);
std::optional<AsClass> class_from_token(std::string_view token);

} // namespace astaxon
