#include "astaxon/synthcorpus.hpp"

#include <array>
#include <string>

#include "astaxon/rng.hpp"
#include "astaxon/textprep.hpp"

namespace astaxon {
namespace {

const std::array<std::string, 20> kNameHeads = {
    "North", "South", "East", "West", "Alpha", "Beta",   "Delta",  "Omni",  "Tele", "Inter",
    "Trans", "Metro", "Pacific", "Coastal", "Summit", "Valley", "River", "Lake", "Quanta", "Vertex",
};

const std::array<std::string, 10> kNameTails = {
    "via", "net", "com", "link", "wave", "data", "line", "path", "port", "node",
};

// Class-typical description phrases; each carries a stem (or stem bigram)
// that identifies its class after preprocessing.
const std::array<std::string, kClassCount> kPhraseBefore = {
    "",           // large_isp: "<name> Global Backbone Networks"
    "",           // small_isp: "<name> Regional Internet Services"
    "",           // customer:  "<name> Savings Bank"
    "University of ", // university
    "",           // ixp: "<name> Internet Exchange"
    "",           // nic: "<name> Network Information Center"
};

const std::array<std::string, kClassCount> kPhraseAfter = {
    " Global Backbone Networks",
    " Regional Internet Services",
    " Savings Bank",
    "",
    " Internet Exchange",
    " Network Information Center",
};

const std::array<std::string, kClassCount> kMisleadWords = {
    "Backbone", "Regional", "Bank", "University", "Exchange", "Center",
};

struct ScalarRange {
    std::uint32_t lo;
    std::uint32_t hi;
};

struct ClassSignature {
    ScalarRange customers;
    ScalarRange providers;
    ScalarRange peers;
    ScalarRange prefixes;
    ScalarRange space;
};

// Qualitative shapes: large ISPs have many customers and huge space, small
// ISPs many peers, stubs few of everything, IXPs nothing but peers.
const std::array<ClassSignature, kClassCount> kSignatures = {{
    {{150, 400}, {0, 0}, {1, 8}, {150, 600}, {4096, 40000}}, // large_isp
    {{2, 40}, {1, 3}, {4, 40}, {8, 80}, {64, 512}},          // small_isp
    {{0, 0}, {1, 2}, {0, 2}, {1, 4}, {1, 8}},                // customer
    {{0, 0}, {1, 3}, {0, 3}, {2, 10}, {16, 128}},            // university
    {{0, 0}, {0, 0}, {8, 60}, {1, 2}, {1, 2}},               // ixp
    {{0, 0}, {1, 2}, {1, 4}, {2, 8}, {4, 32}},               // nic
}};

const ClassSignature kScrambledSignature = {
    {0, 50}, {0, 3}, {0, 20}, {1, 100}, {1, 600},
};

std::uint32_t draw(DetRng& rng, ScalarRange range) {
    return range.lo + static_cast<std::uint32_t>(rng.below(range.hi - range.lo + 1));
}

const StopWordList& builtin_stoplist() {
    static const StopWordList list{{"a", "an", "and", "for", "in", "of", "on", "the"}};
    return list;
}

} // namespace

std::vector<LabeledExample> make_synthetic_corpus(const SynthConfig& config) {
    DetRng rng(seed_combine(config.seed, 0x617374617831ULL));
    std::vector<LabeledExample> out;
    out.reserve(config.per_class * kClassCount);

    std::uint32_t next_asn = 1000;
    for (std::size_t i = 0; i < config.per_class; ++i) {
        for (AsClass cls : all_classes()) {
            const std::size_t c = ordinal(cls);
            const std::string name = kNameHeads[rng.below(kNameHeads.size())] +
                                     kNameTails[rng.below(kNameTails.size())];

            const bool drop_identifier = rng.unit() < config.noise;
            const bool scramble_scalars = rng.unit() < config.noise;
            const bool mislead = rng.unit() < config.noise * 0.5;

            std::string descr = drop_identifier ? name
                                                : kPhraseBefore[c] + name + kPhraseAfter[c];
            if (mislead) {
                descr += ' ';
                descr += kMisleadWords[rng.below(kClassCount)];
            }

            const ClassSignature& sig = scramble_scalars ? kScrambledSignature : kSignatures[c];
            AsRecord rec;
            rec.asn = next_asn++;
            rec.description_terms = preprocess(descr, builtin_stoplist());
            rec.customers = draw(rng, sig.customers);
            rec.providers = draw(rng, sig.providers);
            rec.peers = draw(rng, sig.peers);
            rec.prefixes = draw(rng, sig.prefixes);
            rec.space = draw(rng, sig.space);
            out.push_back({std::move(rec), cls});
        }
    }
    return out;
}

std::vector<DatasetRow> to_dataset_rows(const std::vector<LabeledExample>& examples) {
    std::vector<DatasetRow> rows;
    rows.reserve(examples.size());
    for (const LabeledExample& ex : examples) rows.push_back({ex.record, ex.label});
    return rows;
}

} // namespace astaxon
