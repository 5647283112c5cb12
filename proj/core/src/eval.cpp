#include "astaxon/eval.hpp"

#include <algorithm>
#include <cmath>
#include <future>

#include "astaxon/errors.hpp"
#include "astaxon/rng.hpp"

namespace astaxon {
namespace {

void require_non_empty(const std::vector<LabeledExample>& test) {
    if (test.empty()) throw DataError("evaluation needs a non-empty test set");
}

std::size_t true_class_position(const Ranking& ranking, AsClass label) {
    const auto order = rank_order(ranking);
    for (std::size_t pos = 0; pos < kClassCount; ++pos) {
        if (order[pos] == label) return pos;
    }
    return kClassCount; // unreachable: rank_order is a permutation
}

} // namespace

std::size_t ClassDistribution::classified() const {
    std::size_t total = 0;
    for (std::size_t c : counts) total += c;
    return total;
}

double accuracy(const Model& model, const std::vector<LabeledExample>& test) {
    require_non_empty(test);
    std::size_t correct = 0;
    for (const LabeledExample& ex : test) {
        const Prediction p = classify(model, ex.record);
        if (p.top_class && *p.top_class == ex.label) ++correct;
    }
    return static_cast<double>(correct) / static_cast<double>(test.size());
}

double coverage(const Model& model, const std::vector<LabeledExample>& test) {
    require_non_empty(test);
    std::size_t position_sum = 0;
    for (const LabeledExample& ex : test) {
        position_sum += true_class_position(score_record(model, ex.record), ex.label);
    }
    return static_cast<double>(position_sum) / static_cast<double>(test.size());
}

double top2_rate(const Model& model, const std::vector<LabeledExample>& test) {
    require_non_empty(test);
    std::size_t hits = 0;
    for (const LabeledExample& ex : test) {
        if (true_class_position(score_record(model, ex.record), ex.label) <= 1) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(test.size());
}

std::array<std::optional<double>, kClassCount>
per_class_recall(const Model& model, const std::vector<LabeledExample>& test) {
    require_non_empty(test);
    std::array<std::size_t, kClassCount> seen{};
    std::array<std::size_t, kClassCount> correct{};
    for (const LabeledExample& ex : test) {
        const std::size_t l = ordinal(ex.label);
        ++seen[l];
        const Prediction p = classify(model, ex.record);
        if (p.top_class && *p.top_class == ex.label) ++correct[l];
    }
    std::array<std::optional<double>, kClassCount> out{};
    for (std::size_t l = 0; l < kClassCount; ++l) {
        if (seen[l] > 0) {
            out[l] = static_cast<double>(correct[l]) / static_cast<double>(seen[l]);
        }
    }
    return out;
}

ClassDistribution class_distribution(const std::vector<Prediction>& predictions) {
    ClassDistribution dist;
    for (const Prediction& p : predictions) {
        if (p.top_class) {
            ++dist.counts[ordinal(*p.top_class)];
        } else {
            ++dist.abstentions;
        }
    }
    return dist;
}

EvalReport evaluate(const Model& model, const std::vector<LabeledExample>& test) {
    require_non_empty(test);
    EvalReport report;
    report.test_size = test.size();

    std::array<std::size_t, kClassCount> seen{};
    std::array<std::size_t, kClassCount> per_class_correct{};
    std::size_t position_sum = 0;
    std::vector<Prediction> predictions;
    predictions.reserve(test.size());

    for (const LabeledExample& ex : test) {
        const Prediction p = classify(model, ex.record);
        position_sum += true_class_position(p.ranking, ex.label);
        const std::size_t l = ordinal(ex.label);
        ++seen[l];
        if (!p.top_class) {
            ++report.abstained;
        } else if (*p.top_class == ex.label) {
            ++report.correct;
            ++per_class_correct[l];
        } else {
            ++report.wrong;
        }
        predictions.push_back(p);
    }

    const double n = static_cast<double>(test.size());
    report.accuracy = static_cast<double>(report.correct) / n;
    report.abstention_rate = static_cast<double>(report.abstained) / n;
    report.coverage = static_cast<double>(position_sum) / n;
    for (std::size_t l = 0; l < kClassCount; ++l) {
        if (seen[l] > 0) {
            report.per_class_recall[l] =
                static_cast<double>(per_class_correct[l]) / static_cast<double>(seen[l]);
        }
    }
    report.class_distribution = class_distribution(predictions);
    return report;
}

std::vector<CrossValPoint> cross_validate(const std::vector<LabeledExample>& examples,
                                          const CrossValConfig& config) {
    const std::size_t n = examples.size();
    if (config.iterations == 0) throw ConfigError("iteration count must be at least 1");
    if (config.holdout == 0 || config.holdout >= n) {
        throw ConfigError("holdout size must be between 1 and |S|-1");
    }
    std::vector<std::size_t> sizes = config.train_sizes;
    if (sizes.empty()) sizes.push_back(n - config.holdout);
    for (std::size_t size : sizes) {
        if (size == 0 || size > n - config.holdout) {
            throw ConfigError("training size " + std::to_string(size) +
                              " exceeds the " + std::to_string(n - config.holdout) +
                              " examples left after the holdout");
        }
    }

    // metrics[iteration][size] = (accuracy, coverage); every iteration is
    // seeded from (seed, iteration), so the schedule cannot change results.
    std::vector<std::vector<std::pair<double, double>>> metrics(
        config.iterations, std::vector<std::pair<double, double>>(sizes.size()));

    auto run_iteration = [&](std::size_t iteration) {
        DetRng rng(seed_combine(config.seed, iteration));
        const std::vector<std::size_t> order = rng.sample_indices(n, n);

        std::vector<LabeledExample> test;
        test.reserve(config.holdout);
        for (std::size_t i = 0; i < config.holdout; ++i) test.push_back(examples[order[i]]);

        std::vector<std::size_t> pool(order.begin() + config.holdout, order.end());
        for (std::size_t s = 0; s < sizes.size(); ++s) {
            const std::vector<std::size_t> picks = rng.sample_indices(pool.size(), sizes[s]);
            std::vector<LabeledExample> training;
            training.reserve(sizes[s]);
            for (std::size_t p : picks) training.push_back(examples[pool[p]]);

            TrainConfig train_config = config.train;
            train_config.threads = 1; // parallelism lives at the iteration level
            const TrainResult trained = train(training, train_config);
            metrics[iteration][s] = {accuracy(trained.model, test),
                                     coverage(trained.model, test)};
        }
    };

    if (config.threads > 1) {
        const unsigned workers = std::min<unsigned>(
            config.threads, static_cast<unsigned>(config.iterations));
        std::vector<std::future<void>> futures;
        futures.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            futures.push_back(std::async(std::launch::async, [&, w] {
                for (std::size_t it = w; it < config.iterations; it += workers) {
                    run_iteration(it);
                }
            }));
        }
        for (auto& f : futures) f.get();
    } else {
        for (std::size_t it = 0; it < config.iterations; ++it) run_iteration(it);
    }

    std::vector<CrossValPoint> points;
    points.reserve(sizes.size());
    const double iters = static_cast<double>(config.iterations);
    for (std::size_t s = 0; s < sizes.size(); ++s) {
        double acc_sum = 0.0;
        double cov_sum = 0.0;
        for (std::size_t it = 0; it < config.iterations; ++it) {
            acc_sum += metrics[it][s].first;
            cov_sum += metrics[it][s].second;
        }
        const double mean_acc = acc_sum / iters;
        const double mean_cov = cov_sum / iters;
        double acc_var = 0.0;
        double cov_var = 0.0;
        for (std::size_t it = 0; it < config.iterations; ++it) {
            acc_var += (metrics[it][s].first - mean_acc) * (metrics[it][s].first - mean_acc);
            cov_var += (metrics[it][s].second - mean_cov) * (metrics[it][s].second - mean_cov);
        }
        points.push_back({sizes[s], mean_acc, std::sqrt(acc_var / iters), mean_cov,
                          std::sqrt(cov_var / iters)});
    }
    return points;
}

} // namespace astaxon
