#pragma once

#include "oagkit/group.hpp"

#include <compare>
#include <optional>
#include <string>
#include <vector>

namespace oagkit {

/// A value of the spine: a position, the limit cut at the top of a segment, or inf.
struct SpineValue {
    enum Kind { Pos, Limit, Inf } kind = Inf;
    Position pos;
    std::size_t seg = 0;  // Limit

    static SpineValue at(Position p) { return {Pos, std::move(p), 0}; }
    static SpineValue limit(std::size_t s) { return {Limit, {}, s}; }
    static SpineValue infinity() { return {}; }
    bool is_inf() const { return kind == Inf; }
};

std::strong_ordering compare_values(const ChainSpec& c, const SpineValue& a, const SpineValue& b);
bool same_value(const ChainSpec& c, const SpineValue& a, const SpineValue& b);
const SpineValue& min_value(const ChainSpec& c, const SpineValue& a, const SpineValue& b);
std::string describe(const SpineValue& v);

struct ZeroArgument : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

SpineValue nat_val(const GroupSpec& g, const GroupElement& a);
/// m = 0 gives the natural valuation, m = 1 is constantly inf.
SpineValue val_m(const GroupSpec& g, const GroupElement& a, std::int64_t m);

/// A subset of the spine: per-segment members, plus limit cuts on top of segments; inf is implicit.
struct ValueSet {
    ChainSpec chain;
    std::vector<SegSet> members;
    std::vector<std::size_t> limits;

    bool contains(const SpineValue& v) const;
};
ValueSet spine_m(const GroupSpec& g, std::int64_t m);
/// Union of all spine_m for m >= 2: positions whose rib is not divisible.
ValueSet spine_union(const GroupSpec& g);
std::string describe(const ValueSet& s);

/// One class of a quotient of the spine.
struct QuotientClass {
    bool single = true;            // exactly one archimedean position (or one limit cut)
    std::optional<RibSpec> rib;    // the rib when single and a position
    std::string label;
};

/// A quotient segment: either the source segment unchanged (every point its own class)
/// or a finite run of classes.
struct QuotientPiece {
    std::optional<std::size_t> source;
    bool identity = false;
    bool first_absorbs = false;  // identity piece whose least point also absorbs earlier points
    std::vector<QuotientClass> classes;
    std::vector<Rational> member_coords;  // finite pieces: the representing coordinate of each class
};

struct Quotient {
    ChainSpec chain;
    std::vector<QuotientPiece> pieces;
};

/// Points identified iff no member of `s` lies in [min, max).
Quotient quotient_by(const GroupSpec& g, const ValueSet& s);
Quotient t_spine(const GroupSpec& g, std::int64_t m);
/// The quotient by all spines, coloured by the elementary classes of the ribs.
Quotient regular_spine(const GroupSpec& g);

/// Class of a position in the quotient by `s`: the least member of s at or above it.
struct TClass {
    enum Kind { Member, Gap, Top } kind = Top;
    SpineValue at;       // Member
    std::size_t seg = 0; // Gap: the infimum of members sits at the bottom of this segment
};
TClass t_project(const GroupSpec& g, const ValueSet& s, const Position& p);
bool same_class(const GroupSpec& g, const TClass& a, const TClass& b);

bool pred_eq_bullet(const GroupSpec& g, const GroupElement& a, std::int64_t k);
bool pred_cong_bullet(const GroupSpec& g, const GroupElement& a, std::int64_t m, std::int64_t k);

struct Bounds {
    std::int64_t max_modulus = 12;
    std::int64_t max_coeff = 16;
};
/// Defaults, overridden by OAGKIT_BOUND (coefficient bound).
Bounds default_bounds();

Check check_M(const GroupSpec& g, Bounds b = default_bounds());
Check check_UR(const GroupSpec& g, std::int64_t max_n = 4096);

/// Maximum of {val(g - m g')}: the value and a realizing g'. Empty when the values climb
/// to a limit cut without attaining it.
struct DeltaMax {
    GroupElement g_star;
    SpineValue gamma;
};
std::optional<DeltaMax> delta_max(const GroupSpec& g, const GroupElement& a, std::int64_t m);

}  // namespace oagkit
