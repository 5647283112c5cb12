#include "doctest.h"

#include <fstream>
#include <sstream>

#include "astaxon/dataset.hpp"
#include "astaxon/synthcorpus.hpp"
#include "testenv.hpp"

using namespace astaxon;

TEST_CASE("the bundled 120-AS corpus equals the generator output") {
    SynthConfig config;
    config.per_class = 20;
    config.seed = 20050718;
    const auto corpus = make_synthetic_corpus(config);
    REQUIRE(corpus.size() == 120);

    std::ostringstream regenerated;
    write_dataset(regenerated, to_dataset_rows(corpus));

    std::ifstream in(testenv::synthetic_dataset_path(), std::ios::binary);
    REQUIRE(in.good());
    std::stringstream bundled;
    bundled << in.rdbuf();
    CHECK(bundled.str() == regenerated.str());
}

TEST_CASE("synthetic corpora are balanced and deterministic") {
    SynthConfig config;
    config.per_class = 7;
    config.seed = 3;
    const auto a = make_synthetic_corpus(config);
    const auto b = make_synthetic_corpus(config);
    REQUIRE(a.size() == 42);
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].record == b[i].record);
        CHECK(a[i].label == b[i].label);
    }
    std::array<std::size_t, kClassCount> counts{};
    for (const auto& ex : a) ++counts[ordinal(ex.label)];
    for (std::size_t c : counts) CHECK(c == 7);
}

TEST_CASE("noise removes identifying tokens from part of the corpus") {
    SynthConfig noisy;
    noisy.per_class = 50;
    noisy.seed = 9;
    noisy.noise = 0.5;
    const auto corpus = make_synthetic_corpus(noisy);
    std::size_t with_univers = 0;
    std::size_t university_total = 0;
    for (const auto& ex : corpus) {
        if (ex.label != AsClass::University) continue;
        ++university_total;
        for (const auto& t : ex.record.description_terms) {
            if (t == "univers") {
                ++with_univers;
                break;
            }
        }
    }
    CHECK(university_total == 50);
    CHECK(with_univers > 10);
    CHECK(with_univers < 45);
}
