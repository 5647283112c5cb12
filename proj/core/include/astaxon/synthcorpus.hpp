#pragma once

#include <cstdint>
#include <vector>

#include "astaxon/dataset.hpp"
#include "astaxon/record.hpp"

namespace astaxon {

// Deterministic demo corpora: six classes with class-typical description
// tokens and scalar signatures (providers/customers/peers/prefixes/space
// ranges chosen per class role).
struct SynthConfig {
    std::size_t per_class = 20;
    std::uint64_t seed = 0;
    // 0 keeps the corpus separable; larger values drop identifying tokens,
    // widen scalar ranges and inject cross-class tokens.
    double noise = 0.0;
};

std::vector<LabeledExample> make_synthetic_corpus(const SynthConfig& config);

std::vector<DatasetRow> to_dataset_rows(const std::vector<LabeledExample>& examples);

} // namespace astaxon
