#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "astaxon/record.hpp"
#include "astaxon/textprep.hpp"

namespace astaxon {

inline constexpr std::uint32_t kPrivateAsnFirst = 64512;
inline constexpr std::uint32_t kPrivateAsnLast = 65535;

constexpr bool is_private_asn(std::uint32_t asn) {
    return asn >= kPrivateAsnFirst && asn <= kPrivateAsnLast;
}

// IPv4 CIDR block; address holds the network bits only.
struct Ipv4Prefix {
    std::uint32_t address = 0;
    std::uint8_t length = 0;

    auto operator<=>(const Ipv4Prefix&) const = default;

    std::string to_string() const;
};

// Returns false on bad syntax, octet/length out of range, or nonzero host bits.
bool parse_ipv4_prefix(std::string_view text, Ipv4Prefix& out);

// One route: advertised prefix plus the cleaned AS path (no AS sets, no
// private ASNs, no consecutive duplicates). Origin is the last element.
struct RouteEntry {
    Ipv4Prefix prefix;
    std::vector<std::uint32_t> as_path;

    std::uint32_t origin() const { return as_path.back(); }
};

enum class RelationshipKind : std::uint8_t {
    CustomerToProvider, // a is a customer of b
    PeerToPeer,
};

struct RelationshipLink {
    std::uint32_t a = 0;
    std::uint32_t b = 0;
    RelationshipKind kind = RelationshipKind::PeerToPeer;
};

struct DegreeCounts {
    std::uint32_t customers = 0;
    std::uint32_t providers = 0;
    std::uint32_t peers = 0;

    bool operator==(const DegreeCounts&) const = default;
};

using PrefixSet = std::set<Ipv4Prefix>;

// Per-parser tallies of lines that were skipped rather than treated as fatal.
struct ParseCounters {
    std::size_t malformed = 0;
    std::size_t dropped_empty_path = 0;
    std::size_t rejected_private = 0;
    std::size_t duplicate = 0;
};

struct RoutesResult {
    std::vector<RouteEntry> entries;
    ParseCounters counters;
};

struct RelationshipsResult {
    std::vector<RelationshipLink> links;
    ParseCounters counters;
};

struct DescriptionsResult {
    std::map<std::uint32_t, std::string> by_asn;
    ParseCounters counters;
};

// Lines "A.B.C.D/L ASN ASN ...", AS sets as "{n,n,...}" tokens, '#' comments.
// Malformed lines are counted and skipped; zero valid entries is a DataError.
RoutesResult parse_routes(std::istream& in);

// Lines "a|b|code" with code -1 (a is the provider of b) or 0 (peers).
// Duplicate annotations deduplicate; contradictory ones are a DataError.
RelationshipsResult parse_relationships(std::istream& in);

// Lines "ASN<TAB>free text"; later duplicates win and are counted.
DescriptionsResult parse_descriptions(std::istream& in);

// Distinct-neighbor counts for asn by relationship role; zeros if unseen.
DegreeCounts degree_attributes(const std::vector<RelationshipLink>& links, std::uint32_t asn);

// Number of distinct prefixes whose origin AS is asn.
std::uint32_t prefix_count(const std::vector<RouteEntry>& routes, std::uint32_t asn);

// Size of the union of the blocks, measured in /24 units. A /p with p <= 24
// covers 2^(24-p) /24 blocks; anything longer counts as its enclosing /24.
std::uint32_t space_attribute(const PrefixSet& prefixes);

struct AssembleInput {
    const std::vector<RouteEntry>* routes = nullptr;          // prefix + space attributes
    const std::vector<RouteEntry>* topology_routes = nullptr; // universe membership only
    const std::vector<RelationshipLink>* links = nullptr;
    const std::map<std::uint32_t, std::string>* descriptions = nullptr;
};

// Joins all sources into one record per AS. The universe is the union of
// route origins, every ASN on a topology path, link endpoints and
// description keys; missing attributes default to zero / empty.
std::vector<AsRecord> assemble(const AssembleInput& input, const StopWordList& stoplist);

} // namespace astaxon
