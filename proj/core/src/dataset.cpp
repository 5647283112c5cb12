#include "astaxon/dataset.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "astaxon/errors.hpp"

namespace astaxon {
namespace {

bool parse_u32_field(std::string_view text, std::uint32_t& out) {
    if (text.empty()) return false;
    const char* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), last, out);
    return ec == std::errc() && ptr == last;
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

} // namespace

void write_dataset(std::ostream& out, const std::vector<DatasetRow>& rows) {
    out << "# asn|customers|providers|peers|prefixes|space|terms|label\n";
    for (const DatasetRow& row : rows) {
        const AsRecord& r = row.record;
        out << r.asn << '|' << r.customers << '|' << r.providers << '|' << r.peers << '|'
            << r.prefixes << '|' << r.space << '|';
        for (std::size_t i = 0; i < r.description_terms.size(); ++i) {
            if (i) out << ' ';
            out << r.description_terms[i];
        }
        out << '|';
        if (row.label) out << class_token(*row.label);
        out << '\n';
    }
}

void write_dataset_file(const std::string& path, const std::vector<DatasetRow>& rows) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot open dataset file for writing: " + path);
    write_dataset(out, rows);
    if (!out) throw DataError("I/O error while writing dataset file: " + path);
}

std::vector<DatasetRow> read_dataset(std::istream& in) {
    std::vector<DatasetRow> rows;
    std::set<std::uint32_t> seen;
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        if (!raw.empty() && raw.back() == '\r') raw.pop_back();
        const std::size_t first = raw.find_first_not_of(" \t");
        if (first == std::string::npos || raw[first] == '#') continue;

        const auto fields = split(raw, '|');
        if (fields.size() != 8) throw ParseError("expected 8 '|'-separated fields", line_no);

        DatasetRow row;
        AsRecord& r = row.record;
        if (!parse_u32_field(fields[0], r.asn) || r.asn == 0) {
            throw ParseError("invalid ASN field", line_no);
        }
        if (!parse_u32_field(fields[1], r.customers) || !parse_u32_field(fields[2], r.providers) ||
            !parse_u32_field(fields[3], r.peers) || !parse_u32_field(fields[4], r.prefixes) ||
            !parse_u32_field(fields[5], r.space)) {
            throw ParseError("invalid scalar attribute field", line_no);
        }
        std::istringstream terms{std::string(fields[6])};
        std::string term;
        while (terms >> term) r.description_terms.push_back(term);
        if (!fields[7].empty()) {
            const auto label = class_from_token(fields[7]);
            if (!label) {
                throw ParseError("unknown class token \"" + std::string(fields[7]) + "\"", line_no);
            }
            row.label = *label;
        }
        if (!seen.insert(r.asn).second) {
            throw ParseError("duplicate ASN " + std::to_string(r.asn), line_no);
        }
        rows.push_back(std::move(row));
    }
    if (in.bad()) throw DataError("I/O error while reading dataset");
    return rows;
}

std::vector<DatasetRow> read_dataset_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open dataset file: " + path);
    return read_dataset(in);
}

std::vector<LabeledExample> labeled_subset(const std::vector<DatasetRow>& rows,
                                           std::size_t* unlabeled_count) {
    std::vector<LabeledExample> out;
    std::size_t unlabeled = 0;
    for (const DatasetRow& row : rows) {
        if (row.label) {
            out.push_back({row.record, *row.label});
        } else {
            ++unlabeled;
        }
    }
    if (unlabeled_count) *unlabeled_count = unlabeled;
    return out;
}

} // namespace astaxon
