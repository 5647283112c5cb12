#include "astaxon/boosting.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <map>

#include "astaxon/errors.hpp"

namespace astaxon {
namespace {

constexpr double kK = static_cast<double>(kClassCount);

double membership(AsClass label, std::size_t class_ordinal) {
    return ordinal(label) == class_ordinal ? 1.0 : -1.0;
}

bool contains_sequence(const std::vector<std::string>& tokens,
                       const std::vector<std::string>& sequence) {
    if (sequence.empty() || sequence.size() > tokens.size()) return false;
    const std::size_t last_start = tokens.size() - sequence.size();
    for (std::size_t start = 0; start <= last_start; ++start) {
        bool match = true;
        for (std::size_t i = 0; i < sequence.size(); ++i) {
            if (tokens[start + i] != sequence[i]) {
                match = false;
                break;
            }
        }
        if (match) return true;
    }
    return false;
}

double smoothed_confidence(double w_plus, double w_minus, double epsilon) {
    return 0.5 * std::log((w_plus + epsilon) / (w_minus + epsilon));
}

// Distinct token sequences of length 1..max_len with the examples containing
// them. Keys are the tokens joined by ' ', whose string order equals the
// lexicographic order of the token vectors, so map iteration visits
// candidates in tie-break order.
struct TermIndex {
    struct Entry {
        std::vector<std::string> sequence;
        std::vector<std::size_t> present; // ascending example indices
    };
    std::map<std::string, Entry> entries;
};

TermIndex build_term_index(const std::vector<LabeledExample>& examples, std::size_t max_len) {
    TermIndex index;
    for (std::size_t i = 0; i < examples.size(); ++i) {
        const auto& tokens = examples[i].record.description_terms;
        for (std::size_t len = 1; len <= max_len && len <= tokens.size(); ++len) {
            for (std::size_t start = 0; start + len <= tokens.size(); ++start) {
                std::string key = tokens[start];
                for (std::size_t j = 1; j < len; ++j) {
                    key += ' ';
                    key += tokens[start + j];
                }
                auto [it, inserted] = index.entries.try_emplace(std::move(key));
                if (inserted) {
                    it->second.sequence.assign(tokens.begin() + start,
                                               tokens.begin() + start + len);
                }
                if (it->second.present.empty() || it->second.present.back() != i) {
                    it->second.present.push_back(i);
                }
            }
        }
    }
    return index;
}

std::optional<WeakSearchResult> search_term_rules(const Distribution& d,
                                                  const std::vector<LabeledExample>& examples,
                                                  const TermIndex& index, double epsilon) {
    if (index.entries.empty()) return std::nullopt;

    const double total_weight = d.sum();
    const TermIndex::Entry* best = nullptr;
    double best_z = 0.0;
    std::array<double, kClassCount> best_plus{};
    std::array<double, kClassCount> best_minus{};

    for (const auto& [key, entry] : index.entries) {
        std::array<double, kClassCount> w_plus{};
        std::array<double, kClassCount> w_minus{};
        double present_weight = 0.0;
        for (std::size_t i : entry.present) {
            const AsClass label = examples[i].label;
            for (std::size_t l = 0; l < kClassCount; ++l) {
                const double w = d.at(i, l);
                present_weight += w;
                if (ordinal(label) == l) {
                    w_plus[l] += w;
                } else {
                    w_minus[l] += w;
                }
            }
        }
        double z = total_weight - present_weight; // weight on abstained pairs
        for (std::size_t l = 0; l < kClassCount; ++l) {
            z += 2.0 * std::sqrt(w_plus[l] * w_minus[l]);
        }
        if (!best || z < best_z) {
            best = &entry;
            best_z = z;
            best_plus = w_plus;
            best_minus = w_minus;
        }
    }

    TermRule rule;
    rule.term_sequence = best->sequence;
    for (std::size_t l = 0; l < kClassCount; ++l) {
        rule.present_confidences[l] = smoothed_confidence(best_plus[l], best_minus[l], epsilon);
    }
    return WeakSearchResult{WeakHypothesis{std::move(rule)}, best_z, false};
}

// Midpoints of consecutive distinct values, preceded by one threshold below
// the minimum. Holds whether the attribute is constant across the examples.
struct ThresholdCandidates {
    std::vector<double> thresholds;
    bool constant = false;
};

ThresholdCandidates threshold_candidates(const std::vector<LabeledExample>& examples,
                                         ScalarAttribute attribute) {
    std::vector<std::uint32_t> values;
    values.reserve(examples.size());
    for (const LabeledExample& ex : examples) {
        values.push_back(scalar_value(ex.record, attribute));
    }
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());

    ThresholdCandidates out;
    out.constant = values.size() == 1;
    out.thresholds.push_back(static_cast<double>(values.front()) - 0.5);
    for (std::size_t i = 1; i < values.size(); ++i) {
        out.thresholds.push_back(
            (static_cast<double>(values[i - 1]) + static_cast<double>(values[i])) / 2.0);
    }
    return out;
}

WeakSearchResult search_threshold_rules(const Distribution& d,
                                        const std::vector<LabeledExample>& examples,
                                        ScalarAttribute attribute,
                                        const ThresholdCandidates& candidates, double epsilon) {
    double best_z = 0.0;
    double best_threshold = 0.0;
    std::array<double, kClassCount> best_below_plus{};
    std::array<double, kClassCount> best_below_minus{};
    std::array<double, kClassCount> best_above_plus{};
    std::array<double, kClassCount> best_above_minus{};
    bool have_best = false;

    for (const double threshold : candidates.thresholds) {
        std::array<double, kClassCount> below_plus{};
        std::array<double, kClassCount> below_minus{};
        std::array<double, kClassCount> above_plus{};
        std::array<double, kClassCount> above_minus{};
        for (std::size_t i = 0; i < examples.size(); ++i) {
            const bool below = static_cast<double>(scalar_value(examples[i].record, attribute)) <
                               threshold;
            auto& plus = below ? below_plus : above_plus;
            auto& minus = below ? below_minus : above_minus;
            const AsClass label = examples[i].label;
            for (std::size_t l = 0; l < kClassCount; ++l) {
                if (ordinal(label) == l) {
                    plus[l] += d.at(i, l);
                } else {
                    minus[l] += d.at(i, l);
                }
            }
        }
        double z = 0.0;
        for (std::size_t l = 0; l < kClassCount; ++l) {
            z += 2.0 * std::sqrt(below_plus[l] * below_minus[l]);
            z += 2.0 * std::sqrt(above_plus[l] * above_minus[l]);
        }
        if (!have_best || z < best_z) {
            have_best = true;
            best_z = z;
            best_threshold = threshold;
            best_below_plus = below_plus;
            best_below_minus = below_minus;
            best_above_plus = above_plus;
            best_above_minus = above_minus;
        }
    }

    ThresholdRule rule;
    rule.attribute = attribute;
    rule.threshold = best_threshold;
    for (std::size_t l = 0; l < kClassCount; ++l) {
        rule.above_confidences[l] =
            smoothed_confidence(best_above_plus[l], best_above_minus[l], epsilon);
        rule.below_confidences[l] =
            candidates.constant
                ? rule.above_confidences[l] // no split information: equal blocks
                : smoothed_confidence(best_below_plus[l], best_below_minus[l], epsilon);
    }
    return WeakSearchResult{WeakHypothesis{std::move(rule)}, best_z, candidates.constant};
}

// One search task per attribute, reduced in attribute order so that equal-Z
// ties resolve to description first, then the scalars.
WeakSearchResult select_from_searches(const Distribution& d,
                                      const std::vector<LabeledExample>& examples,
                                      const TermIndex& index,
                                      const std::array<ThresholdCandidates,
                                                       kScalarAttributeCount>& candidates,
                                      double epsilon, unsigned threads) {
    std::optional<WeakSearchResult> term;
    std::array<WeakSearchResult, kScalarAttributeCount> scalar;

    if (threads > 1) {
        auto term_future = std::async(std::launch::async, [&] {
            return search_term_rules(d, examples, index, epsilon);
        });
        std::array<std::future<WeakSearchResult>, kScalarAttributeCount> futures;
        for (std::size_t a = 0; a < kScalarAttributeCount; ++a) {
            futures[a] = std::async(std::launch::async, [&, a] {
                return search_threshold_rules(d, examples, all_scalar_attributes()[a],
                                              candidates[a], epsilon);
            });
        }
        term = term_future.get();
        for (std::size_t a = 0; a < kScalarAttributeCount; ++a) scalar[a] = futures[a].get();
    } else {
        term = search_term_rules(d, examples, index, epsilon);
        for (std::size_t a = 0; a < kScalarAttributeCount; ++a) {
            scalar[a] = search_threshold_rules(d, examples, all_scalar_attributes()[a],
                                               candidates[a], epsilon);
        }
    }

    const WeakSearchResult* best = term ? &*term : nullptr;
    for (const WeakSearchResult& result : scalar) {
        if (!best || result.z < best->z) best = &result;
    }
    return *best;
}

} // namespace

double Distribution::sum() const {
    double total = 0.0;
    for (double w : weights_) total += w;
    return total;
}

Distribution init_distribution(std::size_t example_count) {
    if (example_count == 0) throw DataError("cannot initialize distribution: no examples");
    return Distribution(example_count, 1.0 / (static_cast<double>(example_count) * kK));
}

double hypothesis_output(const WeakHypothesis& h, const AsRecord& x, AsClass y) {
    const std::size_t l = ordinal(y);
    if (const auto* term = std::get_if<TermRule>(&h)) {
        return contains_sequence(x.description_terms, term->term_sequence)
                   ? term->present_confidences[l]
                   : 0.0;
    }
    const auto& thr = std::get<ThresholdRule>(h);
    const double value = static_cast<double>(scalar_value(x, thr.attribute));
    return value < thr.threshold ? thr.below_confidences[l] : thr.above_confidences[l];
}

Ranking score_record(const Model& model, const AsRecord& x) {
    Ranking ranking;
    for (const WeakHypothesis& h : model.rounds) {
        for (std::size_t l = 0; l < kClassCount; ++l) {
            ranking.scores[l] += hypothesis_output(h, x, class_from_ordinal(l));
        }
    }
    return ranking;
}

std::optional<WeakSearchResult> best_term_rule(const Distribution& d,
                                               const std::vector<LabeledExample>& examples,
                                               std::size_t max_len, double epsilon) {
    if (examples.empty()) throw DataError("weak learner needs a non-empty training set");
    const TermIndex index = build_term_index(examples, max_len);
    return search_term_rules(d, examples, index, epsilon);
}

WeakSearchResult best_threshold_rule(const Distribution& d,
                                     const std::vector<LabeledExample>& examples,
                                     ScalarAttribute attribute, double epsilon) {
    if (examples.empty()) throw DataError("weak learner needs a non-empty training set");
    return search_threshold_rules(d, examples, attribute,
                                  threshold_candidates(examples, attribute), epsilon);
}

WeakSearchResult select_weak_hypothesis(const Distribution& d,
                                        const std::vector<LabeledExample>& examples,
                                        const TrainConfig& config) {
    if (examples.empty()) throw DataError("weak learner needs a non-empty training set");
    const double epsilon =
        config.epsilon.value_or(1.0 / (static_cast<double>(examples.size()) * kK));
    if (epsilon <= 0.0) throw ConfigError("smoothing epsilon must be positive");

    const TermIndex index = build_term_index(examples, config.max_sequence_len);
    std::array<ThresholdCandidates, kScalarAttributeCount> candidates;
    for (std::size_t a = 0; a < kScalarAttributeCount; ++a) {
        candidates[a] = threshold_candidates(examples, all_scalar_attributes()[a]);
    }
    return select_from_searches(d, examples, index, candidates, epsilon, config.threads);
}

std::pair<Distribution, double> update_distribution(const Distribution& d,
                                                    const std::vector<LabeledExample>& examples,
                                                    const WeakHypothesis& h) {
    if (d.examples() != examples.size()) {
        throw ConfigError("distribution size does not match the example count");
    }
    Distribution next(examples.size(), 0.0);
    double z = 0.0;
    for (std::size_t i = 0; i < examples.size(); ++i) {
        for (std::size_t l = 0; l < kClassCount; ++l) {
            const double out = hypothesis_output(h, examples[i].record, class_from_ordinal(l));
            const double p = membership(examples[i].label, l);
            const double w = d.at(i, l) * std::exp(-p * out);
            next.at(i, l) = w;
            z += w;
        }
    }
    if (z <= 0.0) throw DataError("distribution update degenerated to zero mass");
    for (std::size_t i = 0; i < examples.size(); ++i) {
        for (std::size_t l = 0; l < kClassCount; ++l) next.at(i, l) /= z;
    }
    return {std::move(next), z};
}

TrainResult train(const std::vector<LabeledExample>& examples, const TrainConfig& config) {
    if (examples.empty()) throw DataError("training set is empty");
    if (config.rounds < 1) throw ConfigError("round count must be at least 1");
    const double epsilon =
        config.epsilon.value_or(1.0 / (static_cast<double>(examples.size()) * kK));
    if (epsilon <= 0.0) throw ConfigError("smoothing epsilon must be positive");
    if (config.max_sequence_len < 1) throw ConfigError("max sequence length must be at least 1");

    const TermIndex index = build_term_index(examples, config.max_sequence_len);
    std::array<ThresholdCandidates, kScalarAttributeCount> candidates;
    for (std::size_t a = 0; a < kScalarAttributeCount; ++a) {
        candidates[a] = threshold_candidates(examples, all_scalar_attributes()[a]);
    }

    TrainResult result;
    result.model.meta = TrainMeta{config.rounds, epsilon, config.max_sequence_len};
    result.model.rounds.reserve(config.rounds);
    result.round_z.reserve(config.rounds);

    Distribution d = init_distribution(examples.size());
    for (std::size_t t = 0; t < config.rounds; ++t) {
        WeakSearchResult selected =
            select_from_searches(d, examples, index, candidates, epsilon, config.threads);
        auto [next, z] = update_distribution(d, examples, selected.rule);
        d = std::move(next);
        result.model.rounds.push_back(std::move(selected.rule));
        result.round_z.push_back(z);
    }
    return result;
}

Prediction classify(const Model& model, const AsRecord& x) {
    return decide(score_record(model, x));
}

double training_hamming_loss(const Model& model, const std::vector<LabeledExample>& examples) {
    if (examples.empty()) throw DataError("cannot compute Hamming loss on an empty set");
    std::size_t errors = 0;
    for (const LabeledExample& ex : examples) {
        const Ranking ranking = score_record(model, ex.record);
        for (std::size_t l = 0; l < kClassCount; ++l) {
            const double f = ranking.scores[l];
            const bool positive = ordinal(ex.label) == l;
            if ((positive && f <= 0.0) || (!positive && f >= 0.0)) ++errors;
        }
    }
    return static_cast<double>(errors) /
           (static_cast<double>(examples.size()) * kK);
}

} // namespace astaxon
