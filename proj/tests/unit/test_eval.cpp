#include "doctest.h"

#include "astaxon/errors.hpp"
#include "astaxon/eval.hpp"
#include "astaxon/synthcorpus.hpp"
#include "oracles.hpp"

using namespace astaxon;

namespace {

// A model that scores the class named by the record's first token.
Model token_oracle_model() {
    Model model;
    for (AsClass c : all_classes()) {
        TermRule rule;
        rule.term_sequence = {std::string(class_token(c))};
        for (std::size_t l = 0; l < kClassCount; ++l) {
            rule.present_confidences[l] = l == ordinal(c) ? 2.0 : -1.0;
        }
        model.rounds.emplace_back(rule);
    }
    return model;
}

LabeledExample tagged(std::uint32_t asn, AsClass tag, AsClass label) {
    AsRecord rec;
    rec.asn = asn;
    rec.description_terms = {std::string(class_token(tag))};
    return {std::move(rec), label};
}

const std::vector<LabeledExample>& synth_corpus() {
    static const std::vector<LabeledExample> corpus = [] {
        SynthConfig config;
        config.per_class = 10;
        config.seed = 5;
        return make_synthetic_corpus(config);
    }();
    return corpus;
}

} // namespace

TEST_CASE("accuracy counts top-rank hits and treats abstention as wrong") {
    const Model model = token_oracle_model();
    std::vector<LabeledExample> test = {
        tagged(1, AsClass::Ixp, AsClass::Ixp),
        tagged(2, AsClass::Nic, AsClass::Nic),
        tagged(3, AsClass::University, AsClass::University),
        tagged(4, AsClass::Ixp, AsClass::Nic), // wrong prediction
    };
    CHECK(accuracy(model, test) == doctest::Approx(0.75));

    // an abstaining record (no tag token) counts as incorrect
    AsRecord blank;
    blank.asn = 5;
    test.push_back({blank, AsClass::Ixp});
    CHECK(accuracy(model, test) == doctest::Approx(0.6));
    CHECK_THROWS_AS(accuracy(model, {}), DataError);
}

TEST_CASE("coverage is the mean zero-based position of the true class") {
    const Model model = token_oracle_model();
    const std::vector<LabeledExample> perfect = {
        tagged(1, AsClass::Ixp, AsClass::Ixp),
        tagged(2, AsClass::LargeIsp, AsClass::LargeIsp),
    };
    CHECK(coverage(model, perfect) == doctest::Approx(0.0));

    // the tag wins position 0; non-tag classes tie at -1 and order by
    // ordinal, leaving the true class at position 1 in both cases
    const std::vector<LabeledExample> second = {
        tagged(1, AsClass::LargeIsp, AsClass::SmallIsp),
        tagged(2, AsClass::Ixp, AsClass::LargeIsp),
    };
    CHECK(coverage(model, second) == doctest::Approx(1.0));
    CHECK_THROWS_AS(coverage(model, {}), DataError);
}

TEST_CASE("top2_rate checks the top two positions") {
    const Model model = token_oracle_model();
    CHECK(top2_rate(model, {tagged(1, AsClass::Nic, AsClass::Nic)}) == doctest::Approx(1.0));
    // true class University ties with the other non-tag classes at -1;
    // ordinal tie-break ranks SmallIsp and CustomerAs before it
    CHECK(top2_rate(model, {tagged(1, AsClass::LargeIsp, AsClass::University)}) ==
          doctest::Approx(0.0));
}

TEST_CASE("per_class_recall flags absent classes instead of zeroing them") {
    const Model model = token_oracle_model();
    const std::vector<LabeledExample> test = {
        tagged(1, AsClass::Ixp, AsClass::Ixp),
        tagged(2, AsClass::Ixp, AsClass::Ixp),
        tagged(3, AsClass::Nic, AsClass::University), // university example, predicted nic
    };
    const auto recall = per_class_recall(model, test);
    REQUIRE(recall[ordinal(AsClass::Ixp)].has_value());
    CHECK(*recall[ordinal(AsClass::Ixp)] == doctest::Approx(1.0));
    REQUIRE(recall[ordinal(AsClass::University)].has_value());
    CHECK(*recall[ordinal(AsClass::University)] == doctest::Approx(0.0));
    CHECK(!recall[ordinal(AsClass::LargeIsp)].has_value());
    CHECK(!recall[ordinal(AsClass::Nic)].has_value());
}

TEST_CASE("class_distribution partitions predictions") {
    CHECK(class_distribution({}).classified() == 0);
    std::vector<Prediction> predictions;
    predictions.push_back(decide(Ranking{{1, 0, 0, 0, 0, 0}}));
    predictions.push_back(decide(Ranking{{0, 2, 0, 0, 0, 0}}));
    predictions.push_back(decide(Ranking{{-1, -1, -1, -1, -1, -1}}));
    const ClassDistribution dist = class_distribution(predictions);
    CHECK(dist.counts[ordinal(AsClass::LargeIsp)] == 1);
    CHECK(dist.counts[ordinal(AsClass::SmallIsp)] == 1);
    CHECK(dist.abstentions == 1);
    CHECK(dist.classified() + dist.abstentions == predictions.size());
}

TEST_CASE("evaluate partitions the test set exactly") {
    const Model model = token_oracle_model();
    AsRecord blank;
    blank.asn = 9;
    const std::vector<LabeledExample> test = {
        tagged(1, AsClass::Ixp, AsClass::Ixp),
        tagged(2, AsClass::Nic, AsClass::University),
        {blank, AsClass::Ixp},
    };
    const EvalReport report = evaluate(model, test);
    CHECK(report.correct + report.wrong + report.abstained == report.test_size);
    CHECK(report.correct == 1);
    CHECK(report.wrong == 1);
    CHECK(report.abstained == 1);
    const double misclassification_rate =
        static_cast<double>(report.wrong) / static_cast<double>(report.test_size);
    CHECK(report.accuracy + report.abstention_rate + misclassification_rate ==
          doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("zero coverage implies non-abstaining predictions are correct") {
    const Model model = token_oracle_model();
    DetRng rng(17);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<LabeledExample> test;
        for (int i = 0; i < 10; ++i) {
            const AsClass tag = class_from_ordinal(rng.below(kClassCount));
            const AsClass label =
                rng.below(3) == 0 ? class_from_ordinal(rng.below(kClassCount)) : tag;
            test.push_back(tagged(static_cast<std::uint32_t>(i + 1), tag, label));
        }
        if (coverage(model, test) != 0.0) continue;
        for (const LabeledExample& ex : test) {
            const Prediction p = classify(model, ex.record);
            if (p.top_class) CHECK(*p.top_class == ex.label);
        }
    }
}

TEST_CASE("cross_validate on a separable corpus reaches full accuracy") {
    CrossValConfig config;
    config.holdout = 12;
    config.iterations = 1;
    config.seed = 7;
    config.train.rounds = 28;
    const auto points = cross_validate(synth_corpus(), config);
    REQUIRE(points.size() == 1);
    CHECK(points[0].train_size == synth_corpus().size() - 12);
    CHECK(points[0].mean_accuracy == doctest::Approx(1.0));
    CHECK(points[0].mean_coverage == doctest::Approx(0.0));
}

TEST_CASE("cross_validate is deterministic for a fixed seed") {
    CrossValConfig config;
    config.holdout = 15;
    config.iterations = 3;
    config.train_sizes = {20, 40};
    config.seed = 99;
    config.train.rounds = 8;
    const auto a = cross_validate(synth_corpus(), config);
    const auto b = cross_validate(synth_corpus(), config);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].mean_accuracy == b[i].mean_accuracy);
        CHECK(a[i].sd_accuracy == b[i].sd_accuracy);
        CHECK(a[i].mean_coverage == b[i].mean_coverage);
        CHECK(a[i].sd_coverage == b[i].sd_coverage);
    }

    CrossValConfig threaded = config;
    threaded.threads = 4;
    const auto c = cross_validate(synth_corpus(), threaded);
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].mean_accuracy == c[i].mean_accuracy);
        CHECK(a[i].sd_accuracy == c[i].sd_accuracy);
        CHECK(a[i].mean_coverage == c[i].mean_coverage);
        CHECK(a[i].sd_coverage == c[i].sd_coverage);
    }
}

TEST_CASE("cross_validate rejects impossible configurations") {
    CrossValConfig config;
    config.holdout = synth_corpus().size();
    CHECK_THROWS_AS(cross_validate(synth_corpus(), config), ConfigError);
    config.holdout = 10;
    config.train_sizes = {synth_corpus().size()};
    CHECK_THROWS_AS(cross_validate(synth_corpus(), config), ConfigError);
    config.train_sizes = {10};
    config.iterations = 0;
    CHECK_THROWS_AS(cross_validate(synth_corpus(), config), ConfigError);
}
