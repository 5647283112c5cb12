#include "doctest.h"

#include <cmath>

#include "astaxon/boosting.hpp"
#include "astaxon/errors.hpp"
#include "oracles.hpp"

using namespace astaxon;

namespace {

AsRecord record_with_terms(std::uint32_t asn, std::vector<std::string> terms) {
    AsRecord rec;
    rec.asn = asn;
    rec.description_terms = std::move(terms);
    return rec;
}

// One example per class, each with a unique identifying token and
// class-distinct scalar signatures.
std::vector<LabeledExample> six_separable_examples() {
    const char* tokens[kClassCount] = {"alpha", "bravo", "charli", "delta", "echo", "foxtrot"};
    std::vector<LabeledExample> out;
    for (std::size_t c = 0; c < kClassCount; ++c) {
        AsRecord rec = record_with_terms(static_cast<std::uint32_t>(100 + c), {tokens[c]});
        rec.customers = static_cast<std::uint32_t>(10 * c);
        rec.peers = static_cast<std::uint32_t>((c * 7) % 5);
        rec.space = std::uint32_t{1} << c;
        out.push_back({std::move(rec), class_from_ordinal(c)});
    }
    return out;
}

} // namespace

TEST_CASE("init_distribution is uniform 1/(mk)") {
    const Distribution d2 = init_distribution(2);
    for (std::size_t i = 0; i < 2; ++i) {
        for (std::size_t l = 0; l < kClassCount; ++l) {
            CHECK(d2.at(i, l) == doctest::Approx(1.0 / 12.0).epsilon(1e-12));
        }
    }
    const Distribution d1 = init_distribution(1);
    CHECK(d1.at(0, 0) == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
    CHECK(d1.sum() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(d2.sum() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS(init_distribution(0), DataError);
}

TEST_CASE("hypothesis_output of a threshold rule picks the matching block") {
    ThresholdRule rule;
    rule.attribute = ScalarAttribute::Space;
    rule.threshold = 8.5;
    rule.below_confidences = {-0.5, -0.3, 0.8, -0.4, -0.6, -0.7};
    rule.above_confidences = {0.6, 0.0, -0.1, -0.4, -0.5, -0.4};
    AsRecord rec;
    rec.space = 3;
    CHECK(hypothesis_output(rule, rec, AsClass::CustomerAs) == 0.8);
    CHECK(hypothesis_output(rule, rec, AsClass::LargeIsp) == -0.5);
    rec.space = 9;
    CHECK(hypothesis_output(rule, rec, AsClass::LargeIsp) == 0.6);
    rec.space = 8; // integer attributes compare against the real threshold
    CHECK(hypothesis_output(rule, rec, AsClass::LargeIsp) == -0.5);
}

TEST_CASE("hypothesis_output of a term rule abstains on absence") {
    TermRule rule;
    rule.term_sequence = {"network", "inform"};
    rule.present_confidences = {-0.2, -0.4, -0.5, -0.1, -0.3, 1.5};
    CHECK(hypothesis_output(rule, record_with_terms(1, {"auckland", "peer", "exchang"}),
                            AsClass::Nic) == 0.0);
    CHECK(hypothesis_output(rule, record_with_terms(1, {"korea", "network", "inform", "center"}),
                            AsClass::Nic) == 1.5);
    CHECK(hypothesis_output(rule, record_with_terms(1, {"inform", "network"}), AsClass::Nic) ==
          0.0); // order matters: the sequence must be consecutive and in order
    CHECK(hypothesis_output(rule, record_with_terms(1, {"network", "x", "inform"}),
                            AsClass::Nic) == 0.0);
}

TEST_CASE("best_term_rule finds the class-identifying token") {
    std::vector<LabeledExample> examples = {
        {record_with_terms(1, {"univers", "north"}), AsClass::University},
        {record_with_terms(2, {"univers", "south"}), AsClass::University},
        {record_with_terms(3, {"telecom", "north"}), AsClass::SmallIsp},
        {record_with_terms(4, {"bank", "south"}), AsClass::CustomerAs},
    };
    const Distribution d = init_distribution(examples.size());
    const double epsilon = 1.0 / (4.0 * 6.0);
    const auto result = best_term_rule(d, examples, 2, epsilon);
    REQUIRE(result.has_value());
    const auto& rule = std::get<TermRule>(result->rule);
    CHECK(rule.term_sequence == std::vector<std::string>{"univers"});
    CHECK(rule.present_confidences[ordinal(AsClass::University)] > 0.0);
    for (AsClass c : all_classes()) {
        if (c != AsClass::University) CHECK(rule.present_confidences[ordinal(c)] < 0.0);
    }
    // the winner's Z equals the brute-force minimum over all sequences
    double oracle_best = 1e300;
    for (const auto& seq : oracle::term_sequences(examples, 2)) {
        oracle_best = std::min(oracle_best, oracle::term_z(d, examples, seq));
    }
    CHECK(result->z == doctest::Approx(oracle_best).epsilon(1e-12));
}

TEST_CASE("best_term_rule on identical token lists matches the oracle") {
    std::vector<LabeledExample> examples;
    for (std::size_t i = 0; i < 5; ++i) {
        examples.push_back({record_with_terms(static_cast<std::uint32_t>(1 + i),
                                              {"same", "tokens", "everywhere"}),
                            class_from_ordinal(i % kClassCount)});
    }
    const Distribution d = init_distribution(examples.size());
    const auto result = best_term_rule(d, examples, 2, 1.0 / 30.0);
    REQUIRE(result.has_value());
    double oracle_best = 1e300;
    for (const auto& seq : oracle::term_sequences(examples, 2)) {
        oracle_best = std::min(oracle_best, oracle::term_z(d, examples, seq));
    }
    CHECK(result->z == doctest::Approx(oracle_best).epsilon(1e-12));
}

TEST_CASE("smoothing keeps confidences finite when one side is empty") {
    std::vector<LabeledExample> examples = {
        {record_with_terms(1, {"aexch"}), AsClass::Ixp},
        {record_with_terms(2, {"zother"}), AsClass::Nic},
    };
    const Distribution d = init_distribution(examples.size());
    const double epsilon = 1.0 / 12.0;
    const auto result = best_term_rule(d, examples, 1, epsilon);
    REQUIRE(result.has_value());
    const auto& rule = std::get<TermRule>(result->rule);
    // both candidates tie on Z; the lexicographically smaller sequence wins
    CHECK(rule.term_sequence == std::vector<std::string>{"aexch"});
    for (double c : rule.present_confidences) CHECK(std::isfinite(c));
    // W- = 0 for the matching class: c = 0.5*ln((W+ + eps)/eps)
    const double w_plus = d.at(0, ordinal(AsClass::Ixp));
    CHECK(rule.present_confidences[ordinal(AsClass::Ixp)] ==
          doctest::Approx(0.5 * std::log((w_plus + epsilon) / epsilon)).epsilon(1e-12));
}

TEST_CASE("best_term_rule without any tokens signals no text rule") {
    std::vector<LabeledExample> examples = {
        {record_with_terms(1, {}), AsClass::Ixp},
        {record_with_terms(2, {}), AsClass::Nic},
    };
    const Distribution d = init_distribution(examples.size());
    CHECK(!best_term_rule(d, examples, 2, 1.0 / 12.0).has_value());
}

TEST_CASE("best_threshold_rule picks the separating midpoint") {
    std::vector<LabeledExample> examples;
    const std::uint32_t values[] = {0, 0, 3, 5};
    const AsClass labels[] = {AsClass::CustomerAs, AsClass::CustomerAs, AsClass::SmallIsp,
                              AsClass::SmallIsp};
    for (std::size_t i = 0; i < 4; ++i) {
        AsRecord rec;
        rec.asn = static_cast<std::uint32_t>(1 + i);
        rec.customers = values[i];
        examples.push_back({std::move(rec), labels[i]});
    }
    const Distribution d = init_distribution(examples.size());
    const auto result = best_threshold_rule(d, examples, ScalarAttribute::Customers, 1.0 / 24.0);
    const auto& rule = std::get<ThresholdRule>(result.rule);
    CHECK(rule.threshold == 1.5);
    CHECK(!result.degenerate);
    CHECK(rule.below_confidences[ordinal(AsClass::CustomerAs)] > 0.0);
    CHECK(rule.above_confidences[ordinal(AsClass::SmallIsp)] > 0.0);

    double oracle_best = 1e300;
    for (double theta : oracle::threshold_candidates(examples, ScalarAttribute::Customers)) {
        oracle_best =
            std::min(oracle_best, oracle::threshold_z(d, examples, ScalarAttribute::Customers,
                                                      theta));
    }
    CHECK(result.z == doctest::Approx(oracle_best).epsilon(1e-12));
}

TEST_CASE("best_threshold_rule on a constant attribute is degenerate with equal blocks") {
    std::vector<LabeledExample> examples = {
        {record_with_terms(1, {}), AsClass::Ixp},
        {record_with_terms(2, {}), AsClass::Nic},
    };
    const Distribution d = init_distribution(examples.size());
    const auto result = best_threshold_rule(d, examples, ScalarAttribute::Peers, 1.0 / 12.0);
    CHECK(result.degenerate);
    const auto& rule = std::get<ThresholdRule>(result.rule);
    CHECK(rule.below_confidences == rule.above_confidences);
}

TEST_CASE("select_weak_hypothesis prefers a clean scalar split over noisy text") {
    DetRng rng(3);
    std::vector<LabeledExample> examples;
    for (std::size_t i = 0; i < 12; ++i) {
        const bool high = i % 2 == 0;
        AsRecord rec;
        rec.asn = static_cast<std::uint32_t>(1 + i);
        rec.space = high ? 100 + static_cast<std::uint32_t>(rng.below(50)) : rng.below(5);
        rec.description_terms = {std::string("noise") + std::to_string(rng.below(12))};
        examples.push_back({std::move(rec), high ? AsClass::LargeIsp : AsClass::CustomerAs});
    }
    TrainConfig config;
    const auto result =
        select_weak_hypothesis(init_distribution(examples.size()), examples, config);
    CHECK(std::holds_alternative<ThresholdRule>(result.rule));
    CHECK(std::get<ThresholdRule>(result.rule).attribute == ScalarAttribute::Space);
}

TEST_CASE("select_weak_hypothesis prefers a perfect term when scalars are constant") {
    std::vector<LabeledExample> examples;
    for (std::size_t i = 0; i < 8; ++i) {
        const bool uni = i % 2 == 0;
        examples.push_back({record_with_terms(static_cast<std::uint32_t>(1 + i),
                                              {uni ? "univers" : "bank", "fill"}),
                            uni ? AsClass::University : AsClass::CustomerAs});
    }
    TrainConfig config;
    const auto result =
        select_weak_hypothesis(init_distribution(examples.size()), examples, config);
    CHECK(std::holds_alternative<TermRule>(result.rule));
}

TEST_CASE("selected rules match the global brute-force minimum Z") {
    DetRng rng(2024);
    for (int trial = 0; trial < 25; ++trial) {
        oracle::RandomInstanceConfig gen;
        const auto examples = oracle::random_instance(rng, gen);
        const Distribution d = oracle::random_distribution(rng, examples.size());
        TrainConfig config;
        config.epsilon = 1.0 / (static_cast<double>(examples.size()) * 6.0);
        const auto result = select_weak_hypothesis(d, examples, config);
        CHECK(result.z <= 1.0 + 1e-12);
        CHECK(result.z >= 0.0);
        const double oracle_min = oracle::min_z(d, examples, config.max_sequence_len);
        CHECK(std::abs(result.z - oracle_min) <= 1e-12);
    }
}

TEST_CASE("every training round selects the brute-force minimum Z") {
    DetRng rng(515);
    oracle::RandomInstanceConfig gen;
    gen.max_examples = 18;
    gen.vocab_size = 25;
    const auto examples = oracle::random_instance(rng, gen);
    TrainConfig config;
    Distribution d = init_distribution(examples.size());
    for (int round = 0; round < 8; ++round) {
        const WeakSearchResult selected = select_weak_hypothesis(d, examples, config);
        const double oracle_min = oracle::min_z(d, examples, config.max_sequence_len);
        CHECK(std::abs(selected.z - oracle_min) <= 1e-12);
        auto [next, z] = update_distribution(d, examples, selected.rule);
        d = std::move(next);
    }
}

TEST_CASE("update_distribution with an all-abstaining rule is the identity") {
    const auto examples = six_separable_examples();
    const Distribution d = init_distribution(examples.size());
    TermRule absent;
    absent.term_sequence = {"nowhere"};
    absent.present_confidences = {1, 1, 1, 1, 1, 1};
    const auto [next, z] = update_distribution(d, examples, WeakHypothesis{absent});
    CHECK(z == doctest::Approx(1.0).epsilon(1e-12));
    for (std::size_t i = 0; i < examples.size(); ++i) {
        for (std::size_t l = 0; l < kClassCount; ++l) {
            CHECK(next.at(i, l) == doctest::Approx(d.at(i, l)).epsilon(1e-12));
        }
    }
}

TEST_CASE("update_distribution shrinks correctly-predicted weight") {
    std::vector<LabeledExample> examples = {
        {record_with_terms(1, {"ixp"}), AsClass::Ixp},
    };
    TermRule rule;
    rule.term_sequence = {"ixp"};
    rule.present_confidences[ordinal(AsClass::Ixp)] = 1.0;
    const Distribution d = init_distribution(1);
    const auto [next, z] = update_distribution(d, examples, WeakHypothesis{rule});
    CHECK(next.at(0, ordinal(AsClass::Ixp)) < next.at(0, ordinal(AsClass::LargeIsp)));
    CHECK(next.sum() == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(z < 1.0);
}

TEST_CASE("update_distribution matches the elementwise oracle") {
    DetRng rng(404);
    for (int trial = 0; trial < 20; ++trial) {
        oracle::RandomInstanceConfig gen;
        const auto examples = oracle::random_instance(rng, gen);
        const Distribution d = oracle::random_distribution(rng, examples.size());

        WeakHypothesis h;
        if (trial % 2 == 0) {
            ThresholdRule rule;
            rule.attribute = all_scalar_attributes()[rng.below(kScalarAttributeCount)];
            rule.threshold = static_cast<double>(rng.below(12)) + 0.5;
            for (std::size_t l = 0; l < kClassCount; ++l) {
                rule.below_confidences[l] = (rng.unit() - 0.5) * 2.0;
                rule.above_confidences[l] = (rng.unit() - 0.5) * 2.0;
            }
            h = rule;
        } else {
            TermRule rule;
            rule.term_sequence = {"tok" + std::to_string(rng.below(40))};
            for (std::size_t l = 0; l < kClassCount; ++l) {
                rule.present_confidences[l] = (rng.unit() - 0.5) * 2.0;
            }
            h = rule;
        }

        const auto [fast, fast_z] = update_distribution(d, examples, h);
        const auto [slow, slow_z] = oracle::update(d, examples, h);
        CHECK(fast_z == doctest::Approx(slow_z).epsilon(1e-12));
        double total = 0.0;
        for (std::size_t i = 0; i < examples.size(); ++i) {
            for (std::size_t l = 0; l < kClassCount; ++l) {
                CHECK(fast.at(i, l) == doctest::Approx(slow.at(i, l)).epsilon(1e-12));
                CHECK(fast.at(i, l) >= 0.0);
                total += fast.at(i, l);
            }
        }
        CHECK(std::abs(total - 1.0) <= 1e-9);
    }
}

TEST_CASE("train reaches zero training error on the six-example corpus") {
    const auto examples = six_separable_examples();
    TrainConfig config;
    config.rounds = 6;
    const TrainResult result = train(examples, config);

    std::size_t correct = 0;
    for (const LabeledExample& ex : examples) {
        const Prediction p = classify(result.model, ex.record);
        if (p.top_class && *p.top_class == ex.label) ++correct;
    }
    CHECK(correct == examples.size());

    double z_product = 1.0;
    for (double z : result.round_z) {
        CHECK(z <= 1.0 + 1e-12);
        CHECK(z >= 0.0);
        z_product *= z;
    }
    CHECK(training_hamming_loss(result.model, examples) <= z_product + 1e-12);
    CHECK(training_hamming_loss(result.model, examples) ==
          doctest::Approx(oracle::hamming_loss(result.model, examples)).epsilon(1e-12));
}

TEST_CASE("train validates its configuration") {
    const auto examples = six_separable_examples();
    TrainConfig zero_rounds;
    zero_rounds.rounds = 0;
    CHECK_THROWS_AS(train(examples, zero_rounds), ConfigError);
    TrainConfig bad_eps;
    bad_eps.epsilon = 0.0;
    CHECK_THROWS_AS(train(examples, bad_eps), ConfigError);
    CHECK_THROWS_AS(train({}, TrainConfig{}), DataError);
}

TEST_CASE("train is deterministic and thread-count independent") {
    DetRng rng(909);
    oracle::RandomInstanceConfig gen;
    gen.max_examples = 20;
    const auto examples = oracle::random_instance(rng, gen);
    TrainConfig config;
    config.rounds = 10;
    const TrainResult a = train(examples, config);
    const TrainResult b = train(examples, config);
    CHECK(a.model == b.model);
    CHECK(a.round_z == b.round_z);
    config.threads = 4;
    const TrainResult c = train(examples, config);
    CHECK(a.model == c.model);
    CHECK(a.round_z == c.round_z);
}

TEST_CASE("adding a term sequence changes only that rule's contribution") {
    Model model;
    TermRule term;
    term.term_sequence = {"network", "inform"};
    term.present_confidences = {-0.1, -0.2, -0.3, -0.4, -0.5, 1.2};
    model.rounds.emplace_back(term);
    ThresholdRule thr;
    thr.attribute = ScalarAttribute::Peers;
    thr.threshold = 2.5;
    thr.below_confidences = {0.3, -0.3, 0.1, -0.1, 0.2, -0.2};
    thr.above_confidences = {-0.3, 0.3, -0.1, 0.1, -0.2, 0.2};
    model.rounds.emplace_back(thr);
    TermRule other;
    other.term_sequence = {"univers"};
    other.present_confidences = {-0.4, -0.4, -0.4, 1.0, -0.4, -0.4};
    model.rounds.emplace_back(other);

    AsRecord base = record_with_terms(1, {"korea", "center"});
    base.peers = 1;
    const Ranking before = score_record(model, base);

    AsRecord with_sequence = base;
    with_sequence.description_terms = {"korea", "network", "inform", "center"};
    const Ranking after = score_record(model, with_sequence);
    for (std::size_t l = 0; l < kClassCount; ++l) {
        CHECK(after.scores[l] == before.scores[l] + term.present_confidences[l]);
    }

    AsRecord restored = with_sequence;
    restored.description_terms = base.description_terms;
    CHECK(score_record(model, restored) == before);
}

TEST_CASE("classify abstains for empty or non-matching models") {
    Model empty;
    AsRecord rec = record_with_terms(1, {"anything"});
    const Prediction p = classify(empty, rec);
    CHECK(!p.top_class.has_value());
    for (double s : p.ranking.scores) CHECK(s == 0.0);

    Model single;
    TermRule rule;
    rule.term_sequence = {"missing"};
    rule.present_confidences = {1, 1, 1, 1, 1, 1};
    single.rounds.emplace_back(rule);
    CHECK(!classify(single, rec).top_class.has_value());
}
