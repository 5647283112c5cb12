#include "astaxon/model_io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "astaxon/errors.hpp"

namespace astaxon {
namespace {

constexpr std::string_view kMagic = "astaxon-model";
constexpr std::string_view kVersion = "v1";

std::string format_double(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

bool parse_double(std::string_view text, double& out) {
    if (text.empty()) return false;
    std::string owned(text);
    char* end = nullptr;
    out = std::strtod(owned.c_str(), &end);
    return end == owned.c_str() + owned.size();
}

bool parse_size(std::string_view text, std::size_t& out) {
    if (text.empty()) return false;
    std::string owned(text);
    char* end = nullptr;
    const unsigned long long v = std::strtoull(owned.c_str(), &end, 10);
    if (end != owned.c_str() + owned.size()) return false;
    out = static_cast<std::size_t>(v);
    return true;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(sep, start);
        if (pos == std::string_view::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
}

std::array<double, kClassCount> parse_confidences(std::string_view text, std::size_t line_no) {
    const auto parts = split(text, ',');
    if (parts.size() != kClassCount) {
        throw ParseError("expected 6 comma-separated confidences", line_no);
    }
    std::array<double, kClassCount> out{};
    for (std::size_t l = 0; l < kClassCount; ++l) {
        if (!parse_double(parts[l], out[l])) {
            throw ParseError("invalid confidence value \"" + std::string(parts[l]) + "\"",
                             line_no);
        }
    }
    return out;
}

std::string_view expect_kv(std::string_view token, std::string_view key, std::size_t line_no) {
    if (token.substr(0, key.size()) != key) {
        throw ParseError("expected \"" + std::string(key) + "<value>\" in header", line_no);
    }
    return token.substr(key.size());
}

} // namespace

std::string model_header(const Model& model) {
    std::ostringstream out;
    out << kMagic << ' ' << kVersion << " k=" << kClassCount << " T=" << model.rounds.size()
        << " eps=" << format_double(model.meta.epsilon)
        << " maxseq=" << model.meta.max_sequence_len;
    return out.str();
}

void save_model(std::ostream& out, const Model& model) {
    out << model_header(model) << '\n';
    for (const WeakHypothesis& h : model.rounds) {
        if (const auto* term = std::get_if<TermRule>(&h)) {
            out << "term|";
            for (std::size_t i = 0; i < term->term_sequence.size(); ++i) {
                if (i) out << ' ';
                out << term->term_sequence[i];
            }
            out << '|';
            for (std::size_t l = 0; l < kClassCount; ++l) {
                if (l) out << ',';
                out << format_double(term->present_confidences[l]);
            }
            out << '\n';
        } else {
            const auto& thr = std::get<ThresholdRule>(h);
            out << "thr|" << attribute_name(thr.attribute) << '|'
                << format_double(thr.threshold) << '|';
            for (std::size_t l = 0; l < kClassCount; ++l) {
                if (l) out << ',';
                out << format_double(thr.below_confidences[l]);
            }
            out << '|';
            for (std::size_t l = 0; l < kClassCount; ++l) {
                if (l) out << ',';
                out << format_double(thr.above_confidences[l]);
            }
            out << '\n';
        }
    }
}

void save_model_file(const std::string& path, const Model& model) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot open model file for writing: " + path);
    save_model(out, model);
    if (!out) throw DataError("I/O error while writing model file: " + path);
}

Model load_model(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw ParseError("missing model header", 1);
    if (!line.empty() && line.back() == '\r') line.pop_back();

    std::istringstream header(line);
    std::string magic, version, k_field, t_field, eps_field, maxseq_field;
    if (!(header >> magic >> version >> k_field >> t_field >> eps_field >> maxseq_field) ||
        magic != kMagic) {
        throw ParseError("not an astaxon model file", 1);
    }
    if (version != kVersion) {
        throw ParseError("unsupported model version \"" + version + "\"", 1);
    }
    std::size_t k = 0;
    if (!parse_size(expect_kv(k_field, "k=", 1), k) || k != kClassCount) {
        throw ParseError("unsupported class count in header", 1);
    }

    Model model;
    std::size_t rounds = 0;
    if (!parse_size(expect_kv(t_field, "T=", 1), rounds)) {
        throw ParseError("invalid round count in header", 1);
    }
    if (!parse_double(expect_kv(eps_field, "eps=", 1), model.meta.epsilon) ||
        model.meta.epsilon <= 0.0) {
        throw ParseError("invalid smoothing value in header", 1);
    }
    if (!parse_size(expect_kv(maxseq_field, "maxseq=", 1), model.meta.max_sequence_len) ||
        model.meta.max_sequence_len == 0) {
        throw ParseError("invalid max sequence length in header", 1);
    }
    model.meta.rounds = rounds;

    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (model.rounds.size() == rounds) {
            throw ParseError("unexpected content after the last round", line_no);
        }
        const auto fields = split(line, '|');
        if (fields[0] == "term") {
            if (fields.size() != 3) throw ParseError("term rule needs 3 fields", line_no);
            TermRule rule;
            std::istringstream tokens{std::string(fields[1])};
            std::string token;
            while (tokens >> token) rule.term_sequence.push_back(token);
            if (rule.term_sequence.empty()) {
                throw ParseError("term rule has an empty sequence", line_no);
            }
            rule.present_confidences = parse_confidences(fields[2], line_no);
            model.rounds.emplace_back(std::move(rule));
        } else if (fields[0] == "thr") {
            if (fields.size() != 5) throw ParseError("threshold rule needs 5 fields", line_no);
            ThresholdRule rule;
            const auto attr = attribute_from_name(fields[1]);
            if (!attr) {
                throw ParseError("unknown attribute \"" + std::string(fields[1]) + "\"", line_no);
            }
            rule.attribute = *attr;
            if (!parse_double(fields[2], rule.threshold)) {
                throw ParseError("invalid threshold value", line_no);
            }
            rule.below_confidences = parse_confidences(fields[3], line_no);
            rule.above_confidences = parse_confidences(fields[4], line_no);
            model.rounds.emplace_back(std::move(rule));
        } else {
            throw ParseError("unknown rule kind \"" + std::string(fields[0]) + "\"", line_no);
        }
    }
    if (in.bad()) throw DataError("I/O error while reading model");
    if (model.rounds.size() != rounds) {
        throw ParseError("model file truncated: expected " + std::to_string(rounds) +
                             " rounds, found " + std::to_string(model.rounds.size()),
                         line_no + 1);
    }
    return model;
}

Model load_model_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open model file: " + path);
    return load_model(in);
}

} // namespace astaxon
