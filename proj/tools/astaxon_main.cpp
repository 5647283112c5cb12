// astaxon: batch CLI for AS attribute ingestion, AdaBoost.MH training,
// taxonomy classification and cross-validated evaluation.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <set>

#include "CLI11.hpp"

#include "astaxon/dataset.hpp"
#include "astaxon/errors.hpp"
#include "astaxon/eval.hpp"
#include "astaxon/ingest.hpp"
#include "astaxon/model_io.hpp"
#include "astaxon/textprep.hpp"

namespace {

using namespace astaxon;

struct GlobalOptions {
    std::uint64_t seed = 0;
    std::string stopwords;
    bool quiet = false;
    unsigned threads = 1;
};

std::string fixed6(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6f", value);
    return buf;
}

std::string signed3(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%+.3f", value);
    return buf;
}

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open input file: " + path);
    return in;
}

// ---------------------------------------------------------------- ingest --

struct IngestArgs {
    std::string routes;
    std::string topology_routes;
    std::string relationships;
    std::string descriptions;
    std::string out;
};

int cmd_ingest(const GlobalOptions& global, const IngestArgs& args) {
    if (args.routes.empty() && args.topology_routes.empty() && args.relationships.empty() &&
        args.descriptions.empty()) {
        throw ConfigError("ingest needs at least one input source "
                          "(--routes, --topology-routes, --relationships, --descriptions)");
    }
    if (global.stopwords.empty()) {
        throw ConfigError("ingest needs --stopwords <file>");
    }
    const StopWordList stoplist = load_stopwords_file(global.stopwords);

    RoutesResult routes;
    RoutesResult topology;
    RelationshipsResult relationships;
    DescriptionsResult descriptions;
    AssembleInput input;

    if (!args.routes.empty()) {
        auto in = open_input(args.routes);
        routes = parse_routes(in);
        input.routes = &routes.entries;
        if (!global.quiet) {
            std::cout << "routes: " << routes.entries.size() << " entries ("
                      << routes.counters.malformed << " malformed, "
                      << routes.counters.dropped_empty_path << " empty-path)\n";
        }
    }
    if (!args.topology_routes.empty()) {
        auto in = open_input(args.topology_routes);
        topology = parse_routes(in);
        input.topology_routes = &topology.entries;
        if (!global.quiet) {
            std::cout << "topology routes: " << topology.entries.size() << " entries ("
                      << topology.counters.malformed << " malformed)\n";
        }
    }
    if (!args.relationships.empty()) {
        auto in = open_input(args.relationships);
        relationships = parse_relationships(in);
        input.links = &relationships.links;
        if (!global.quiet) {
            std::cout << "relationships: " << relationships.links.size() << " links ("
                      << relationships.counters.malformed << " malformed, "
                      << relationships.counters.rejected_private << " private, "
                      << relationships.counters.duplicate << " duplicate)\n";
        }
    }
    if (!args.descriptions.empty()) {
        auto in = open_input(args.descriptions);
        descriptions = parse_descriptions(in);
        input.descriptions = &descriptions.by_asn;
        if (!global.quiet) {
            std::cout << "descriptions: " << descriptions.by_asn.size() << " ASes ("
                      << descriptions.counters.malformed << " malformed, "
                      << descriptions.counters.duplicate << " duplicate)\n";
        }
    }

    const std::vector<AsRecord> records = assemble(input, stoplist);
    std::vector<DatasetRow> rows;
    rows.reserve(records.size());
    for (const AsRecord& rec : records) rows.push_back({rec, std::nullopt});
    write_dataset_file(args.out, rows);
    if (!global.quiet) {
        std::cout << "wrote " << rows.size() << " AS records to " << args.out << "\n";
    }
    return 0;
}

// ----------------------------------------------------------------- train --

struct TrainArgs {
    std::string dataset;
    std::string supplement;
    std::string out;
    std::size_t rounds = 28;
    double epsilon = -1.0; // <= 0 means the 1/(m*k) default
    std::size_t max_seq = 2;
};

std::vector<LabeledExample> load_training_set(const TrainArgs& args, bool quiet) {
    const auto rows = read_dataset_file(args.dataset);
    std::size_t unlabeled = 0;
    std::vector<LabeledExample> examples = labeled_subset(rows, &unlabeled);
    if (!quiet && unlabeled > 0) {
        std::cout << "ignoring " << unlabeled << " unlabeled rows\n";
    }
    if (!args.supplement.empty()) {
        const auto extra_rows = read_dataset_file(args.supplement);
        std::set<std::uint32_t> seen;
        for (const LabeledExample& ex : examples) seen.insert(ex.record.asn);
        std::size_t extra_unlabeled = 0;
        const auto extra = labeled_subset(extra_rows, &extra_unlabeled);
        for (const LabeledExample& ex : extra) {
            if (!seen.insert(ex.record.asn).second) {
                throw DataError("supplement repeats ASN " + std::to_string(ex.record.asn));
            }
            examples.push_back(ex);
        }
        if (!quiet) {
            std::cout << "supplement: " << extra.size() << " labeled rows appended\n";
        }
    }
    if (examples.empty()) throw DataError("no labeled rows in " + args.dataset);
    return examples;
}

void print_round_table(const TrainResult& result) {
    for (std::size_t t = 0; t < result.model.rounds.size(); ++t) {
        const WeakHypothesis& h = result.model.rounds[t];
        char prefix[32];
        std::snprintf(prefix, sizeof(prefix), "rnd %2zu  ", t + 1);
        if (const auto* term = std::get_if<TermRule>(&h)) {
            std::cout << prefix << "description \"";
            for (std::size_t i = 0; i < term->term_sequence.size(); ++i) {
                if (i) std::cout << ' ';
                std::cout << term->term_sequence[i];
            }
            std::cout << "\" ";
            for (double c : term->present_confidences) std::cout << ' ' << signed3(c);
        } else {
            const auto& thr = std::get<ThresholdRule>(h);
            std::cout << prefix << attribute_name(thr.attribute) << " < " << thr.threshold
                      << " ";
            for (double c : thr.below_confidences) std::cout << ' ' << signed3(c);
            std::cout << '\n'
                      << prefix << attribute_name(thr.attribute) << " > " << thr.threshold
                      << " ";
            for (double c : thr.above_confidences) std::cout << ' ' << signed3(c);
        }
        std::cout << "  Z=" << fixed6(result.round_z[t]) << '\n';
    }
}

int cmd_train(const GlobalOptions& global, const TrainArgs& args) {
    const std::vector<LabeledExample> examples = load_training_set(args, global.quiet);

    TrainConfig config;
    config.rounds = args.rounds;
    if (args.epsilon > 0.0) config.epsilon = args.epsilon;
    config.max_sequence_len = args.max_seq;
    config.rng_seed = global.seed;
    config.threads = global.threads;

    const TrainResult result = train(examples, config);
    save_model_file(args.out, result.model);
    if (!global.quiet) {
        std::cout << "trained on " << examples.size() << " labeled ASes\n";
        print_round_table(result);
    }
    std::cout << model_header(result.model) << "\n";
    return 0;
}

// -------------------------------------------------------------- classify --

struct ClassifyArgs {
    std::string dataset;
    std::string model;
    std::string out;
};

int cmd_classify(const ClassifyArgs& args) {
    const Model model = load_model_file(args.model);
    const auto rows = read_dataset_file(args.dataset);

    std::ofstream out(args.out, std::ios::binary);
    if (!out) throw ConfigError("cannot open predictions file for writing: " + args.out);

    std::vector<Prediction> predictions;
    predictions.reserve(rows.size());
    for (const DatasetRow& row : rows) {
        const Prediction p = classify(model, row.record);
        out << row.record.asn << '|'
            << (p.top_class ? class_token(*p.top_class) : std::string_view("ABSTAIN")) << '|';
        for (std::size_t l = 0; l < kClassCount; ++l) {
            if (l) out << ',';
            out << fixed6(p.ranking.scores[l]);
        }
        out << '\n';
        predictions.push_back(p);
    }
    if (!out) throw DataError("I/O error while writing predictions: " + args.out);

    const ClassDistribution dist = class_distribution(predictions);
    const std::size_t classified = dist.classified();
    std::cout << "classified " << classified << " of " << predictions.size() << " ASes, "
              << dist.abstentions << " abstentions\n";
    for (AsClass c : all_classes()) {
        const std::size_t count = dist.counts[ordinal(c)];
        const double pct =
            classified == 0 ? 0.0
                            : 100.0 * static_cast<double>(count) / static_cast<double>(classified);
        char line[96];
        std::snprintf(line, sizeof(line), "%-10s %8zu  %5.1f%%\n",
                      std::string(class_token(c)).c_str(), count, pct);
        std::cout << line;
    }
    return 0;
}

// -------------------------------------------------------------- validate --

struct ValidateArgs {
    std::string dataset;
    std::string out;
    std::size_t holdout = 100;
    std::size_t iterations = 400;
    std::vector<std::size_t> sizes;
    std::size_t rounds = 28;
    double epsilon = -1.0;
    std::size_t max_seq = 2;
};

int cmd_validate(const GlobalOptions& global, const ValidateArgs& args) {
    const auto rows = read_dataset_file(args.dataset);
    std::size_t unlabeled = 0;
    const std::vector<LabeledExample> examples = labeled_subset(rows, &unlabeled);
    if (examples.empty()) throw DataError("no labeled rows in " + args.dataset);
    if (!global.quiet && unlabeled > 0) {
        std::cout << "ignoring " << unlabeled << " unlabeled rows\n";
    }

    CrossValConfig config;
    config.holdout = args.holdout;
    config.iterations = args.iterations;
    config.train_sizes = args.sizes;
    config.seed = global.seed;
    config.threads = global.threads;
    config.train.rounds = args.rounds;
    if (args.epsilon > 0.0) config.train.epsilon = args.epsilon;
    config.train.max_sequence_len = args.max_seq;
    config.train.rng_seed = global.seed;

    const std::vector<CrossValPoint> points = cross_validate(examples, config);

    std::cout << "cross-validation: " << examples.size() << " labeled ASes, holdout "
              << config.holdout << ", " << config.iterations << " iterations, seed "
              << global.seed << "\n";
    std::cout << "size  mean_acc  sd_acc    mean_cov  sd_cov\n";
    for (const CrossValPoint& p : points) {
        char line[120];
        std::snprintf(line, sizeof(line), "%4zu  %.6f  %.6f  %.6f  %.6f\n", p.train_size,
                      p.mean_accuracy, p.sd_accuracy, p.mean_coverage, p.sd_coverage);
        std::cout << line;
    }

    auto machine_lines = [&](std::ostream& dest) {
        for (const CrossValPoint& p : points) {
            dest << p.train_size << '|' << fixed6(p.mean_accuracy) << '|' << fixed6(p.sd_accuracy)
                 << '|' << fixed6(p.mean_coverage) << '|' << fixed6(p.sd_coverage) << '\n';
        }
    };
    if (args.out.empty()) {
        machine_lines(std::cout);
    } else {
        std::ofstream out(args.out, std::ios::binary);
        if (!out) throw ConfigError("cannot open report file for writing: " + args.out);
        machine_lines(out);
        if (!out) throw DataError("I/O error while writing report: " + args.out);
    }
    return 0;
}

// ----------------------------------------------------------------- stats --

int cmd_stats(const std::string& dataset_path) {
    const auto rows = read_dataset_file(dataset_path);
    if (rows.empty()) throw DataError("dataset is empty: " + dataset_path);

    std::size_t labeled = 0;
    std::array<std::size_t, kClassCount> label_counts{};
    std::set<std::string> vocabulary;
    struct MinMax {
        std::uint32_t min = UINT32_MAX;
        std::uint32_t max = 0;
        std::uint64_t sum = 0;
    };
    std::array<MinMax, kScalarAttributeCount> scalars;

    for (const DatasetRow& row : rows) {
        if (row.label) {
            ++labeled;
            ++label_counts[ordinal(*row.label)];
        }
        for (const std::string& t : row.record.description_terms) vocabulary.insert(t);
        for (std::size_t a = 0; a < kScalarAttributeCount; ++a) {
            const std::uint32_t v = scalar_value(row.record, all_scalar_attributes()[a]);
            scalars[a].min = std::min(scalars[a].min, v);
            scalars[a].max = std::max(scalars[a].max, v);
            scalars[a].sum += v;
        }
    }

    std::cout << "records: " << rows.size() << " (" << labeled << " labeled, "
              << rows.size() - labeled << " unlabeled)\n";
    std::cout << "distinct terms: " << vocabulary.size() << "\n";
    std::cout << "labels:\n";
    for (AsClass c : all_classes()) {
        char line[64];
        std::snprintf(line, sizeof(line), "  %-10s %8zu\n",
                      std::string(class_token(c)).c_str(), label_counts[ordinal(c)]);
        std::cout << line;
    }
    std::cout << "attributes (min/mean/max):\n";
    for (std::size_t a = 0; a < kScalarAttributeCount; ++a) {
        const double mean =
            static_cast<double>(scalars[a].sum) / static_cast<double>(rows.size());
        char line[96];
        std::snprintf(line, sizeof(line), "  %-10s %8u  %12.2f  %8u\n",
                      std::string(attribute_name(all_scalar_attributes()[a])).c_str(),
                      scalars[a].min, mean, scalars[a].max);
        std::cout << line;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"AS taxonomy toolkit: ingest routing data, train an AdaBoost.MH "
                 "classifier, classify ASes, cross-validate"};
    app.require_subcommand(1);
    app.fallthrough(); // global flags may follow the subcommand name

    GlobalOptions global;
    app.add_option("--seed", global.seed, "Seed for randomized procedures")->capture_default_str();
    app.add_option("--stopwords", global.stopwords, "Stop-word list file");
    app.add_flag("--quiet", global.quiet, "Suppress informational output");
    app.add_option("--threads", global.threads, "Worker threads (results are identical for any count)")
        ->capture_default_str();

    IngestArgs ingest_args;
    auto* ingest_cmd =
        app.add_subcommand("ingest", "Join routing inputs into a per-AS attribute dataset");
    ingest_cmd->add_option("--routes", ingest_args.routes,
                           "Routes file feeding the prefix and space attributes");
    ingest_cmd->add_option("--topology-routes", ingest_args.topology_routes,
                           "Routes file whose path ASNs only widen the AS universe");
    ingest_cmd->add_option("--relationships", ingest_args.relationships,
                           "AS relationship file (a|b|-1 provider-of, a|b|0 peers)");
    ingest_cmd->add_option("--descriptions", ingest_args.descriptions,
                           "ASN<TAB>description file");
    ingest_cmd->add_option("--out", ingest_args.out, "Output dataset file")->required();

    TrainArgs train_args;
    auto* train_cmd = app.add_subcommand("train", "Train the boosted classifier");
    train_cmd->add_option("--dataset", train_args.dataset, "Labeled dataset file")->required();
    train_cmd->add_option("--supplement", train_args.supplement,
                          "Extra labeled dataset appended to the training set");
    train_cmd->add_option("--out", train_args.out, "Output model file")->required();
    train_cmd->add_option("--rounds", train_args.rounds, "Boosting rounds")
        ->capture_default_str();
    train_cmd->add_option("--eps", train_args.epsilon, "Confidence smoothing (default 1/(m*k))")
        ->check(CLI::PositiveNumber);
    train_cmd->add_option("--max-seq", train_args.max_seq, "Longest term sequence searched")
        ->capture_default_str();

    ClassifyArgs classify_args;
    auto* classify_cmd = app.add_subcommand("classify", "Rank classes for every AS");
    classify_cmd->add_option("--dataset", classify_args.dataset, "Dataset file")->required();
    classify_cmd->add_option("--model", classify_args.model, "Model file")->required();
    classify_cmd->add_option("--out", classify_args.out, "Output predictions file")->required();

    ValidateArgs validate_args;
    auto* validate_cmd =
        app.add_subcommand("validate", "Repeated random-subsampling cross-validation");
    validate_cmd->add_option("--dataset", validate_args.dataset, "Labeled dataset file")
        ->required();
    validate_cmd->add_option("--holdout", validate_args.holdout, "Held-out test examples")
        ->capture_default_str();
    validate_cmd->add_option("--iterations", validate_args.iterations, "Random subsampling runs")
        ->capture_default_str();
    validate_cmd->add_option("--sizes", validate_args.sizes,
                             "Training-set sizes (default: all remaining examples)");
    validate_cmd->add_option("--rounds", validate_args.rounds, "Boosting rounds")
        ->capture_default_str();
    validate_cmd->add_option("--eps", validate_args.epsilon,
                             "Confidence smoothing (default 1/(m*k))")
        ->check(CLI::PositiveNumber);
    validate_cmd->add_option("--max-seq", validate_args.max_seq, "Longest term sequence searched")
        ->capture_default_str();
    validate_cmd->add_option("--out", validate_args.out,
                             "Write the machine-readable report here instead of stdout");

    std::string stats_dataset;
    auto* stats_cmd = app.add_subcommand("stats", "Summarize a dataset file");
    stats_cmd->add_option("--dataset", stats_dataset, "Dataset file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (ingest_cmd->parsed()) return cmd_ingest(global, ingest_args);
        if (train_cmd->parsed()) return cmd_train(global, train_args);
        if (classify_cmd->parsed()) return cmd_classify(classify_args);
        if (validate_cmd->parsed()) return cmd_validate(global, validate_args);
        if (stats_cmd->parsed()) return cmd_stats(stats_dataset);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const DataError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
