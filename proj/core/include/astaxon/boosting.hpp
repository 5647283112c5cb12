#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "astaxon/ranking.hpp"
#include "astaxon/record.hpp"

namespace astaxon {

// Per-(example, class) weight table maintained across boosting rounds.
// Entries are non-negative and sum to 1 (within fp error) after each update.
class Distribution {
public:
    Distribution() = default;
    Distribution(std::size_t examples, double initial)
        : examples_(examples), weights_(examples * kClassCount, initial) {}

    std::size_t examples() const { return examples_; }

    double& at(std::size_t example, std::size_t class_ordinal) {
        return weights_[example * kClassCount + class_ordinal];
    }
    double at(std::size_t example, std::size_t class_ordinal) const {
        return weights_[example * kClassCount + class_ordinal];
    }

    double sum() const;

private:
    std::size_t examples_ = 0;
    std::vector<double> weights_;
};

// Fires when the token sequence occurs consecutively in the description;
// abstains (all-zero output) otherwise.
struct TermRule {
    std::vector<std::string> term_sequence;
    std::array<double, kClassCount> present_confidences{};

    bool operator==(const TermRule&) const = default;
};

// Votes on both sides of a threshold over one scalar attribute.
struct ThresholdRule {
    ScalarAttribute attribute = ScalarAttribute::Customers;
    double threshold = 0.0;
    std::array<double, kClassCount> below_confidences{};
    std::array<double, kClassCount> above_confidences{};

    bool operator==(const ThresholdRule&) const = default;
};

using WeakHypothesis = std::variant<TermRule, ThresholdRule>;

struct TrainMeta {
    std::size_t rounds = 0;
    double epsilon = 0.0;
    std::size_t max_sequence_len = 0;

    bool operator==(const TrainMeta&) const = default;
};

// Ordered weak hypotheses; f(x,y) is their summed output.
struct Model {
    std::vector<WeakHypothesis> rounds;
    TrainMeta meta;

    bool operator==(const Model&) const = default;
};

struct TrainConfig {
    std::size_t rounds = 28;
    std::optional<double> epsilon;   // default 1/(m*k), resolved at train time
    std::size_t max_sequence_len = 2;
    std::uint64_t rng_seed = 0;      // provenance only; training is deterministic
    unsigned threads = 1;
};

// train() output: the model plus the per-round normalization coefficients,
// whose product bounds the training Hamming loss.
struct TrainResult {
    Model model;
    std::vector<double> round_z;
};

// Search result for one attribute: the candidate rule and its objective
// Z (the bound the weak learner minimizes).
struct WeakSearchResult {
    WeakHypothesis rule;
    double z = 1.0;
    bool degenerate = false; // threshold search over a constant attribute
};

// D_1(x, y) = 1/(m*k). Throws DataError when m == 0.
Distribution init_distribution(std::size_t example_count);

// Signed confidence of one rule for one record and class.
double hypothesis_output(const WeakHypothesis& h, const AsRecord& x, AsClass y);

// Summed rule outputs f(x, .) over all rounds.
Ranking score_record(const Model& model, const AsRecord& x);

// Exhaustive search over all token sequences of length 1..max_len occurring
// in S; minimum Z wins, ties to the lexicographically smallest sequence.
// Empty result when no description contains any token.
std::optional<WeakSearchResult> best_term_rule(const Distribution& d,
                                               const std::vector<LabeledExample>& examples,
                                               std::size_t max_len, double epsilon);

// Candidate thresholds are midpoints of consecutive distinct values plus one
// below the minimum; minimum Z wins, ties to the smallest threshold. A
// constant attribute yields a degenerate rule with equal blocks.
WeakSearchResult best_threshold_rule(const Distribution& d,
                                     const std::vector<LabeledExample>& examples,
                                     ScalarAttribute attribute, double epsilon);

// Global minimum over the description search and all five scalar searches;
// ties resolve in attribute order (description first, then the scalars).
WeakSearchResult select_weak_hypothesis(const Distribution& d,
                                        const std::vector<LabeledExample>& examples,
                                        const TrainConfig& config);

// Multiplies every weight by exp(-P(x,y) h(x,y)) and renormalizes; returns
// the new distribution and the pre-normalization sum Z_t.
std::pair<Distribution, double> update_distribution(const Distribution& d,
                                                    const std::vector<LabeledExample>& examples,
                                                    const WeakHypothesis& h);

// T rounds of select + update. Deterministic for fixed inputs and config,
// independent of config.threads.
TrainResult train(const std::vector<LabeledExample>& examples, const TrainConfig& config);

Prediction classify(const Model& model, const AsRecord& x);

// Fraction of (example, class) pairs whose f sign disagrees with membership;
// a zero score counts as a disagreement.
double training_hamming_loss(const Model& model, const std::vector<LabeledExample>& examples);

} // namespace astaxon
