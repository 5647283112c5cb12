#pragma once

#include <array>
#include <optional>

#include "astaxon/classes.hpp"

namespace astaxon {

// Scores of the ranking function f(x, .) for one record, indexed by class
// ordinal. Higher means more likely a member.
struct Ranking {
    std::array<double, kClassCount> scores{};

    bool operator==(const Ranking&) const = default;
};

// Ranking plus the decided top class; no top class means abstention.
struct Prediction {
    Ranking ranking;
    std::optional<AsClass> top_class;
};

// All six classes sorted by score descending; ties broken by ascending
// class ordinal so the order is total and reproducible.
std::array<AsClass, kClassCount> rank_order(const Ranking& ranking);

// Head of rank_order if its score is strictly positive, otherwise abstain.
// A maximum of exactly zero abstains.
Prediction decide(const Ranking& ranking);

} // namespace astaxon
