#pragma once

#include "oagkit/chain.hpp"
#include "oagkit/group.hpp"
#include "oagkit/pair.hpp"
#include "oagkit/pseudo.hpp"
#include "oagkit/rib.hpp"
#include "oagkit/valuation.hpp"
#include "oagkit/verdict.hpp"

#include <stdexcept>
#include <string>

namespace oagkit {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Json to_json(const Rational& r);
Rational rational_from_json(const Json& j);
Json to_json(const Coord& c);
Coord coord_from_json(const Json& j);

Json to_json(const Position& p);
Position position_from_json(const Json& j);
Json to_json(const Segment& s);
Segment segment_from_json(const Json& j);
Json to_json(const ChainSpec& c);
ChainSpec chain_from_json(const Json& j);
Json to_json(const Cut& c);

/// Accepts the shorthands "Z", "Q", "R", "Z(p)", "Z*" as well as full objects.
Json to_json(const RibSpec& r);
RibSpec rib_from_json(const Json& j);

Json to_json(const GroupSpec& g);
GroupSpec group_from_json(const Json& j);
Json to_json(const GroupSpec& g, const GroupElement& a);
GroupElement element_from_json(const GroupSpec& g, const Json& j);

Json to_json(const SpineValue& v);
SpineValue spine_value_from_json(const Json& j);
Json to_json(const SegSet& s);
Json to_json(const ValueSet& s);
Json to_json(const Quotient& q);

Json to_json(const Skeleton& s);

/// {"modulus": m, "terms": [...], "rule": {"seg", "prefix", "cycle", "offset"}}; terms or rule may be absent.
PseudoSequence pseudo_from_json(const GroupSpec& g, const Json& j);
Json to_json(const GroupSpec& g, const PseudoSequence& s);
Json to_json(const PairSpec& p, const Approximation& a);

/// G and H are group objects or file names, resolved against `base_dir`.
PairSpec pair_from_json(const Json& j, const std::string& base_dir = ".");
Json to_json(const PairSpec& p);
PairSpec load_pair_file(const std::string& path);

Json load_json_file(const std::string& path);

}  // namespace oagkit
