#include "astaxon/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <sstream>
#include <unordered_map>

#include "astaxon/errors.hpp"

namespace astaxon {
namespace {

bool parse_u32(std::string_view text, std::uint32_t& out) {
    if (text.empty()) return false;
    std::uint32_t value = 0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last) return false;
    out = value;
    return true;
}

bool is_comment_or_blank(const std::string& line) {
    const std::size_t pos = line.find_first_not_of(" \t\r");
    return pos == std::string::npos || line[pos] == '#';
}

std::string strip_cr(std::string line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
}

std::vector<std::string_view> split_fields(std::string_view line, char sep) {
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

std::string Ipv4Prefix::to_string() const {
    std::ostringstream out;
    out << ((address >> 24) & 0xff) << '.' << ((address >> 16) & 0xff) << '.'
        << ((address >> 8) & 0xff) << '.' << (address & 0xff) << '/' << int(length);
    return out.str();
}

bool parse_ipv4_prefix(std::string_view text, Ipv4Prefix& out) {
    const std::size_t slash = text.find('/');
    if (slash == std::string_view::npos) return false;
    std::uint32_t len = 0;
    if (!parse_u32(text.substr(slash + 1), len) || len > 32) return false;

    std::uint32_t address = 0;
    std::string_view rest = text.substr(0, slash);
    for (int octet = 0; octet < 4; ++octet) {
        std::string_view part;
        if (octet < 3) {
            const std::size_t dot = rest.find('.');
            if (dot == std::string_view::npos) return false;
            part = rest.substr(0, dot);
            rest = rest.substr(dot + 1);
        } else {
            part = rest;
        }
        std::uint32_t value = 0;
        if (!parse_u32(part, value) || value > 255) return false;
        address = (address << 8) | value;
    }

    const std::uint32_t mask = len == 0 ? 0 : ~std::uint32_t{0} << (32 - len);
    if ((address & ~mask) != 0) return false;
    out.address = address;
    out.length = static_cast<std::uint8_t>(len);
    return true;
}

RoutesResult parse_routes(std::istream& in) {
    if (!in) throw DataError("cannot read routes input");
    RoutesResult result;
    std::string raw;
    while (std::getline(in, raw)) {
        const std::string line = strip_cr(raw);
        if (is_comment_or_blank(line)) continue;

        std::istringstream fields(line);
        std::string token;
        if (!(fields >> token)) continue;

        RouteEntry entry;
        if (!parse_ipv4_prefix(token, entry.prefix)) {
            ++result.counters.malformed;
            continue;
        }

        bool malformed = false;
        std::vector<std::uint32_t> path;
        while (fields >> token) {
            if (token.front() == '{' && token.back() == '}') continue; // AS set
            std::uint32_t asn = 0;
            if (!parse_u32(token, asn) || asn == 0) {
                malformed = true;
                break;
            }
            if (is_private_asn(asn)) continue;
            if (path.empty() || path.back() != asn) path.push_back(asn);
        }
        if (malformed) {
            ++result.counters.malformed;
            continue;
        }
        if (path.empty()) {
            ++result.counters.dropped_empty_path;
            continue;
        }
        entry.as_path = std::move(path);
        result.entries.push_back(std::move(entry));
    }
    if (in.bad()) throw DataError("I/O error while reading routes input");
    if (result.entries.empty()) throw DataError("routes input contains no valid entries");
    return result;
}

RelationshipsResult parse_relationships(std::istream& in) {
    if (!in) throw DataError("cannot read relationships input");
    RelationshipsResult result;

    enum class PairKind : std::uint8_t { LoCustomerOfHi, HiCustomerOfLo, Peer };
    struct PairState {
        PairKind kind;
        std::size_t order; // position in result.links
    };
    std::map<std::pair<std::uint32_t, std::uint32_t>, PairState> seen;

    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const std::string line = strip_cr(raw);
        if (is_comment_or_blank(line)) continue;

        const auto fields = split_fields(line, '|');
        std::uint32_t a = 0;
        std::uint32_t b = 0;
        if (fields.size() != 3 || !parse_u32(fields[0], a) || !parse_u32(fields[1], b) ||
            a == 0 || b == 0 || a == b || (fields[2] != "-1" && fields[2] != "0")) {
            ++result.counters.malformed;
            continue;
        }
        if (is_private_asn(a) || is_private_asn(b)) {
            ++result.counters.rejected_private;
            continue;
        }

        // File convention: "a|b|-1" means a is the provider of b.
        const bool peer = fields[2] == "0";
        const std::uint32_t lo = std::min(a, b);
        const std::uint32_t hi = std::max(a, b);
        PairKind kind = PairKind::Peer;
        if (!peer) kind = (a == hi) ? PairKind::LoCustomerOfHi : PairKind::HiCustomerOfLo;

        auto [it, inserted] = seen.try_emplace({lo, hi}, PairState{kind, result.links.size()});
        if (!inserted) {
            if (it->second.kind != kind) {
                throw DataError("conflicting relationship annotations for AS pair " +
                                std::to_string(lo) + "/" + std::to_string(hi) + " at line " +
                                std::to_string(line_no));
            }
            ++result.counters.duplicate;
            continue;
        }

        RelationshipLink link;
        if (peer) {
            link = {lo, hi, RelationshipKind::PeerToPeer};
        } else if (kind == PairKind::LoCustomerOfHi) {
            link = {lo, hi, RelationshipKind::CustomerToProvider};
        } else {
            link = {hi, lo, RelationshipKind::CustomerToProvider};
        }
        result.links.push_back(link);
    }
    if (in.bad()) throw DataError("I/O error while reading relationships input");
    return result;
}

DescriptionsResult parse_descriptions(std::istream& in) {
    if (!in) throw DataError("cannot read descriptions input");
    DescriptionsResult result;
    std::string raw;
    while (std::getline(in, raw)) {
        const std::string line = strip_cr(raw);
        if (is_comment_or_blank(line)) continue;

        const std::size_t tab = line.find('\t');
        std::uint32_t asn = 0;
        if (tab == std::string::npos || !parse_u32(line.substr(0, tab), asn) || asn == 0) {
            ++result.counters.malformed;
            continue;
        }
        if (is_private_asn(asn)) {
            ++result.counters.rejected_private;
            continue;
        }
        auto [it, inserted] = result.by_asn.insert_or_assign(asn, line.substr(tab + 1));
        if (!inserted) ++result.counters.duplicate;
    }
    if (in.bad()) throw DataError("I/O error while reading descriptions input");
    return result;
}

DegreeCounts degree_attributes(const std::vector<RelationshipLink>& links, std::uint32_t asn) {
    DegreeCounts counts;
    for (const RelationshipLink& link : links) {
        if (link.kind == RelationshipKind::PeerToPeer) {
            if (link.a == asn || link.b == asn) ++counts.peers;
        } else {
            if (link.b == asn) ++counts.customers; // link.a is a customer of asn
            if (link.a == asn) ++counts.providers; // link.b is a provider of asn
        }
    }
    return counts;
}

std::uint32_t prefix_count(const std::vector<RouteEntry>& routes, std::uint32_t asn) {
    PrefixSet distinct;
    for (const RouteEntry& route : routes) {
        if (route.origin() == asn) distinct.insert(route.prefix);
    }
    return static_cast<std::uint32_t>(distinct.size());
}

std::uint32_t space_attribute(const PrefixSet& prefixes) {
    // Map each block to a half-open interval of /24 indices and merge.
    std::vector<std::pair<std::uint32_t, std::uint64_t>> intervals;
    intervals.reserve(prefixes.size());
    for (const Ipv4Prefix& p : prefixes) {
        const std::uint32_t start = p.address >> 8;
        const std::uint64_t count =
            p.length <= 24 ? (std::uint64_t{1} << (24 - p.length)) : 1;
        intervals.emplace_back(start, std::uint64_t{start} + count);
    }
    std::sort(intervals.begin(), intervals.end());

    std::uint64_t total = 0;
    std::uint64_t cur_start = 0;
    std::uint64_t cur_end = 0;
    bool open = false;
    for (const auto& [start, end] : intervals) {
        if (open && start <= cur_end) {
            cur_end = std::max(cur_end, end);
        } else {
            if (open) total += cur_end - cur_start;
            cur_start = start;
            cur_end = end;
            open = true;
        }
    }
    if (open) total += cur_end - cur_start;
    return static_cast<std::uint32_t>(total);
}

std::vector<AsRecord> assemble(const AssembleInput& input, const StopWordList& stoplist) {
    std::set<std::uint32_t> universe;
    std::unordered_map<std::uint32_t, PrefixSet> advertised;

    if (input.routes) {
        for (const RouteEntry& route : *input.routes) {
            universe.insert(route.origin());
            advertised[route.origin()].insert(route.prefix);
        }
    }
    if (input.topology_routes) {
        for (const RouteEntry& route : *input.topology_routes) {
            universe.insert(route.as_path.begin(), route.as_path.end());
        }
    }
    std::unordered_map<std::uint32_t, DegreeCounts> degrees;
    if (input.links) {
        for (const RelationshipLink& link : *input.links) {
            universe.insert(link.a);
            universe.insert(link.b);
            if (link.kind == RelationshipKind::PeerToPeer) {
                ++degrees[link.a].peers;
                ++degrees[link.b].peers;
            } else {
                ++degrees[link.a].providers;
                ++degrees[link.b].customers;
            }
        }
    }
    if (input.descriptions) {
        for (const auto& [asn, descr] : *input.descriptions) universe.insert(asn);
    }
    if (universe.empty()) throw DataError("no ASes found in any input source");

    std::vector<AsRecord> records;
    records.reserve(universe.size());
    for (std::uint32_t asn : universe) {
        AsRecord rec;
        rec.asn = asn;
        if (input.descriptions) {
            auto it = input.descriptions->find(asn);
            if (it != input.descriptions->end()) {
                rec.description_terms = preprocess(it->second, stoplist);
            }
        }
        if (auto deg = degrees.find(asn); deg != degrees.end()) {
            rec.customers = deg->second.customers;
            rec.providers = deg->second.providers;
            rec.peers = deg->second.peers;
        }
        auto it = advertised.find(asn);
        if (it != advertised.end()) {
            rec.prefixes = static_cast<std::uint32_t>(it->second.size());
            rec.space = space_attribute(it->second);
        }
        records.push_back(std::move(rec));
    }
    return records;
}

} // namespace astaxon
