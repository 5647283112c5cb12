#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "astaxon/boosting.hpp"

namespace astaxon {

// Counts of predicted classes over a dataset, plus abstentions.
struct ClassDistribution {
    std::array<std::size_t, kClassCount> counts{};
    std::size_t abstentions = 0;

    std::size_t classified() const;
};

// Held-out metrics for one model. Rates derive from the integer counts, so
// correct + wrong + abstained partitions the test set exactly.
struct EvalReport {
    std::size_t test_size = 0;
    std::size_t correct = 0;
    std::size_t wrong = 0;
    std::size_t abstained = 0;
    double accuracy = 0.0;
    double coverage = 0.0;
    double abstention_rate = 0.0;
    std::array<std::optional<double>, kClassCount> per_class_recall{};
    ClassDistribution class_distribution;
};

// Fraction of test examples whose decided top class equals the label;
// abstentions count as incorrect.
double accuracy(const Model& model, const std::vector<LabeledExample>& test);

// Mean zero-based position of the true class in the descending rank order.
double coverage(const Model& model, const std::vector<LabeledExample>& test);

// Fraction of test examples with the true class at position 0 or 1.
double top2_rate(const Model& model, const std::vector<LabeledExample>& test);

// Recall per class; classes absent from the test set stay unset.
std::array<std::optional<double>, kClassCount>
per_class_recall(const Model& model, const std::vector<LabeledExample>& test);

ClassDistribution class_distribution(const std::vector<Prediction>& predictions);

EvalReport evaluate(const Model& model, const std::vector<LabeledExample>& test);

// One point of the accuracy/coverage-versus-training-size curves.
struct CrossValPoint {
    std::size_t train_size = 0;
    double mean_accuracy = 0.0;
    double sd_accuracy = 0.0;
    double mean_coverage = 0.0;
    double sd_coverage = 0.0;
};

struct CrossValConfig {
    std::size_t holdout = 100;
    std::size_t iterations = 400;
    std::vector<std::size_t> train_sizes; // empty means one size: |S| - holdout
    std::uint64_t seed = 0;
    TrainConfig train;
    unsigned threads = 1;
};

// Repeated random subsampling: per iteration draw a holdout test set, then
// one training subset per requested size from the remainder, train a fresh
// model and score it. Each iteration's randomness derives from
// (seed, iteration index), so results do not depend on scheduling.
std::vector<CrossValPoint> cross_validate(const std::vector<LabeledExample>& examples,
                                          const CrossValConfig& config);

} // namespace astaxon
