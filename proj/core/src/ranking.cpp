#include "astaxon/ranking.hpp"

#include <algorithm>
#include <numeric>

namespace astaxon {

std::array<AsClass, kClassCount> rank_order(const Ranking& ranking) {
    std::array<std::size_t, kClassCount> idx{};
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        if (ranking.scores[a] != ranking.scores[b]) return ranking.scores[a] > ranking.scores[b];
        return a < b;
    });
    std::array<AsClass, kClassCount> out{};
    for (std::size_t i = 0; i < kClassCount; ++i) out[i] = class_from_ordinal(idx[i]);
    return out;
}

Prediction decide(const Ranking& ranking) {
    Prediction p;
    p.ranking = ranking;
    const AsClass top = rank_order(ranking)[0];
    if (ranking.scores[ordinal(top)] > 0.0) p.top_class = top;
    return p;
}

} // namespace astaxon
