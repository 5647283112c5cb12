#include <benchmark/benchmark.h>

#include <sstream>

#include "astaxon/boosting.hpp"
#include "astaxon/ingest.hpp"
#include "astaxon/rng.hpp"
#include "astaxon/synthcorpus.hpp"
#include "astaxon/textprep.hpp"

namespace {

using namespace astaxon;

std::vector<LabeledExample> corpus(std::size_t per_class) {
    SynthConfig config;
    config.per_class = per_class;
    config.seed = 42;
    config.noise = 0.2;
    return make_synthetic_corpus(config);
}

void BM_PorterStem(benchmark::State& state) {
    const char* words[] = {"university",  "exchanges",     "informational", "relational",
                           "backbone",    "organizations", "connectivity",  "telecommunications",
                           "engineering", "hosting"};
    for (auto _ : state) {
        for (const char* w : words) {
            benchmark::DoNotOptimize(porter_stem(w));
        }
    }
    state.SetItemsProcessed(state.iterations() * 10);
}
BENCHMARK(BM_PorterStem);

void BM_Preprocess(benchmark::State& state) {
    std::istringstream stop("of\nthe\nand\nfor\n");
    const StopWordList stoplist = load_stopwords(stop);
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            preprocess("Seoul National University of Education and Research", stoplist));
    }
}
BENCHMARK(BM_Preprocess);

void BM_SpaceAttribute(benchmark::State& state) {
    DetRng rng(7);
    PrefixSet set;
    for (int i = 0; i < 1000; ++i) {
        Ipv4Prefix p;
        p.length = static_cast<std::uint8_t>(8 + rng.below(25));
        p.address = static_cast<std::uint32_t>(rng.next()) & (~std::uint32_t{0} << (32 - p.length));
        set.insert(p);
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(space_attribute(set));
    }
}
BENCHMARK(BM_SpaceAttribute);

void BM_SelectWeakHypothesis(benchmark::State& state) {
    const auto examples = corpus(static_cast<std::size_t>(state.range(0)));
    const Distribution d = init_distribution(examples.size());
    TrainConfig config;
    for (auto _ : state) {
        benchmark::DoNotOptimize(select_weak_hypothesis(d, examples, config));
    }
    state.SetComplexityN(static_cast<std::int64_t>(examples.size()));
}
BENCHMARK(BM_SelectWeakHypothesis)->Arg(10)->Arg(20)->Arg(40)->Complexity();

void BM_TrainDefaults(benchmark::State& state) {
    const auto examples = corpus(20);
    TrainConfig config;
    for (auto _ : state) {
        benchmark::DoNotOptimize(train(examples, config));
    }
}
BENCHMARK(BM_TrainDefaults);

void BM_Classify(benchmark::State& state) {
    const auto examples = corpus(20);
    TrainConfig config;
    const Model model = train(examples, config).model;
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(classify(model, examples[i % examples.size()].record));
        ++i;
    }
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_Classify);

} // namespace

BENCHMARK_MAIN();
