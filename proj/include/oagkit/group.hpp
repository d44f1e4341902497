#pragma once

#include "oagkit/chain.hpp"
#include "oagkit/rib.hpp"

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace oagkit {

enum class RibSelKind { All, Segment, Colour, Point };

struct RibSelector {
    RibSelKind kind = RibSelKind::All;
    std::size_t seg = 0;
    std::string colour;
    Position pos;
};

/// Later assignments override earlier ones. With `localized_by_index` the rib at
/// coordinate n is Z_(p_n), p_n the n-th prime.
struct RibAssignment {
    RibSelector on;
    RibSpec rib;
    bool localized_by_index = false;
};

enum class Mode { Hahn, Sum, Generators };

/// Eventually constant element of the terminal Omega segment.
struct Generator {
    std::string name;
    std::vector<Coord> prefix;
    Coord tail;

    Coord at(std::size_t n) const { return n < prefix.size() ? prefix[n] : tail; }
};

struct GroupSpec {
    std::string name;
    ChainSpec spine;
    std::vector<RibAssignment> ribs;
    Mode mode = Mode::Hahn;
    std::vector<Generator> generators;

    std::size_t terminal_segment() const { return spine.segments.size() - 1; }
    /// Hahn mode may carry generators too: they name eventually constant elements of the product.
    bool has_generators() const { return !generators.empty(); }
};

struct UnsupportedPresentation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void validate(const GroupSpec& g);
RibSpec rib_at(const GroupSpec& g, const Position& p);

/// A subset of one segment, closed under the operations needed to track where ribs live.
struct SegSet {
    RuleKind kind = RuleKind::None;  // None, All, FiniteSet, CofiniteComplement, DenseCodense
    std::vector<Rational> coords;
    bool rational_class = true;

    static SegSet none() { return {}; }
    static SegSet all() { return {RuleKind::All, {}, true}; }
    bool empty() const { return kind == RuleKind::None || (kind == RuleKind::FiniteSet && coords.empty()); }
    bool full() const { return kind == RuleKind::All || (kind == RuleKind::CofiniteComplement && coords.empty()); }
};
SegSet set_union(const SegSet& a, const SegSet& b);
SegSet set_complement(const SegSet& a);
SegSet set_intersection(const SegSet& a, const SegSet& b);

/// The ribs living on one segment and where each one sits.
struct SegmentRibs {
    bool localized_by_index = false;  // the Z_(p_n) family covers the whole segment
    std::vector<std::pair<RibSpec, SegSet>> pieces;  // non-empty, pairwise disjoint
};
SegmentRibs ribs_on_segment(const GroupSpec& g, std::size_t seg);
/// Every distinct rib occurring somewhere on the spine; the localized family is expanded
/// up to `family_bound` members.
std::vector<RibSpec> occurring_ribs(const GroupSpec& g, std::size_t family_bound = 8);

/// finite: non-zero corrections, sorted by position. On the terminal segment the actual
/// coordinate is the correction plus the generator contribution.
struct GroupElement {
    std::vector<std::pair<Position, Coord>> finite;
    std::vector<std::int64_t> gens;
};

GroupElement g_zero(const GroupSpec& g);
GroupElement g_single(const GroupSpec& g, const Position& p, const Coord& v);
GroupElement g_generator(const GroupSpec& g, std::size_t j, std::int64_t coeff = 1);
GroupElement g_from_coords(const GroupSpec& g, const std::vector<std::pair<Position, Coord>>& coords);
GroupElement canonical(const GroupSpec& g, GroupElement a);
void validate(const GroupSpec& g, const GroupElement& a);

GroupElement g_add(const GroupSpec& g, const GroupElement& a, const GroupElement& b);
/// a + k b
GroupElement g_add_scaled(const GroupSpec& g, const GroupElement& a, const GroupElement& b, std::int64_t k);
GroupElement g_neg(const GroupSpec& g, const GroupElement& a);
GroupElement g_sub(const GroupSpec& g, const GroupElement& a, const GroupElement& b);
GroupElement g_scale(const GroupSpec& g, const GroupElement& a, std::int64_t k);
std::strong_ordering g_compare(const GroupSpec& g, const GroupElement& a, const GroupElement& b);
bool g_equal(const GroupSpec& g, const GroupElement& a, const GroupElement& b);
bool g_is_zero(const GroupSpec& g, const GroupElement& a);

Coord coordinate(const GroupSpec& g, const GroupElement& a, const Position& p);
/// Constant value of the coordinates far out on the terminal segment.
Coord tail_value(const GroupSpec& g, const GroupElement& a);
/// Least terminal-segment coordinate from which every coordinate equals the tail value.
std::size_t horizon(const GroupSpec& g, const GroupElement& a);
/// Non-zero coordinates below the horizon, in increasing order.
std::vector<std::pair<Position, Coord>> explicit_support(const GroupSpec& g, const GroupElement& a);

/// Generator coefficient vectors e with e = c (mod m) and sum e_j * tail_j = 0.
std::optional<std::vector<std::int64_t>> cancel_tail(const GroupSpec& g, const std::vector<std::int64_t>& c,
                                                     std::int64_t m, std::int64_t bound = 16);

/// Past this coordinate of the terminal segment every rib behaves like the base rib
/// for m-divisibility.
std::size_t tail_scan_end(const GroupSpec& g, std::size_t h, std::int64_t m);

/// In Hahn mode the witness may be missing: the quotient exists in the product but not in the store.
struct Divisibility {
    bool divisible = false;
    std::optional<GroupElement> witness;
};
Divisibility g_in_mG(const GroupSpec& g, const GroupElement& a, std::int64_t m);

struct Skeleton {
    ChainSpec chain;
    std::vector<SegmentRibs> ribs;
};
Skeleton skeleton(const GroupSpec& g);

}  // namespace oagkit
