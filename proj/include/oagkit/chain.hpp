#pragma once

#include "oagkit/rational.hpp"
#include "oagkit/verdict.hpp"

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace oagkit {

enum class SegKind { Fin, Omega, OmegaStar, Int, DenseQ, DenseComplete };

struct Segment {
    SegKind kind = SegKind::Omega;
    std::int64_t size = 0;  // Fin only

    static Segment fin(std::int64_t k) { return {SegKind::Fin, k}; }
    static Segment omega() { return {SegKind::Omega, 0}; }
    static Segment omega_star() { return {SegKind::OmegaStar, 0}; }
    static Segment integers() { return {SegKind::Int, 0}; }
    static Segment dense_q() { return {SegKind::DenseQ, 0}; }
    static Segment dense_complete() { return {SegKind::DenseComplete, 0}; }

    bool has_min() const;
    bool has_max() const;
    bool discrete() const;
    bool dense() const { return kind == SegKind::DenseQ || kind == SegKind::DenseComplete; }
    friend bool operator==(const Segment&, const Segment&) = default;
};

/// A point of a chain. OmegaStar coordinates count down from the top (0 is the maximum).
struct Position {
    bool inf = false;
    std::size_t seg = 0;
    Rational coord{0};

    static Position infinity() { return {true, 0, Rational(0)}; }
    static Position at(std::size_t seg, std::int64_t c) { return {false, seg, Rational(static_cast<long>(c))}; }
    static Position at(std::size_t seg, Rational c) { return {false, seg, std::move(c)}; }

    friend bool operator==(const Position& a, const Position& b) {
        if (a.inf || b.inf) return a.inf == b.inf;
        return a.seg == b.seg && a.coord == b.coord;
    }
};

enum class RuleKind { None, All, FiniteSet, CofiniteComplement, SchematicSingletons, DenseCodense };

struct SegmentRule {
    std::size_t seg = 0;
    RuleKind kind = RuleKind::None;
    std::vector<Rational> coords;  // FiniteSet members, or the excluded points of CofiniteComplement
    bool rational_class = true;    // DenseCodense: the class holding every rational coordinate
    bool prime_indexed = false;    // SchematicSingletons: member i is labelled by the i-th prime
};

/// A named colour. SchematicSingletons rules describe a family of singleton colours,
/// member i sitting at coordinate i of the segment.
struct ColourRule {
    std::string name;
    std::vector<SegmentRule> rules;
    bool contains_top = false;
};

struct ChainSpec {
    std::vector<Segment> segments;
    std::vector<ColourRule> colours;

    static ChainSpec of(std::vector<Segment> segs) { return {std::move(segs), {}}; }
    bool trivial() const { return segments.size() == 1 && segments[0].kind == SegKind::Fin && segments[0].size == 0; }
    const SegmentRule* rule_on(const ColourRule& c, std::size_t seg) const;
};

struct PositionOutOfDomain : std::domain_error {
    using std::domain_error::domain_error;
};

enum class CutKind { MinusInf, PlusInf, PrincipalPlus, PrincipalMinus, SegmentBoundary, LimitOfSegment, InteriorGap };
enum class Side { Bottom, Top };
enum class Definability { Definable, NotDefinable, Unknown };

/// InteriorGap(i) stands for the class of non-principal cuts inside a DenseQ segment.
struct Cut {
    CutKind kind = CutKind::MinusInf;
    Position pos;
    std::size_t seg = 0;
    Side side = Side::Top;
    Definability status = Definability::Unknown;
    std::string note;

    static Cut minus_inf() { return {CutKind::MinusInf}; }
    static Cut plus_inf() { return {CutKind::PlusInf}; }
    static Cut principal_plus(Position p) { return {CutKind::PrincipalPlus, std::move(p)}; }
    static Cut principal_minus(Position p) { return {CutKind::PrincipalMinus, std::move(p)}; }
    static Cut boundary(std::size_t i) { return {CutKind::SegmentBoundary, {}, i}; }
    static Cut limit_of(std::size_t i, Side s) { return {CutKind::LimitOfSegment, {}, i, s}; }
    static Cut interior_gap(std::size_t i) { return {CutKind::InteriorGap, {}, i}; }
};

void validate(const ChainSpec& c);
void validate(const ChainSpec& c, const Position& p);

std::strong_ordering compare_positions(const ChainSpec& c, const Position& a, const Position& b);

/// Membership in a colour; for schematic families this is membership in some member.
bool in_colour(const ChainSpec& c, const ColourRule& colour, const Position& p);

Cut classify_cut(const ChainSpec& c, Cut cut);
Verdict chain_stably_embedded(const ChainSpec& c);

ChainSpec ordered_sum(const ChainSpec& a, const ChainSpec& b);
/// Drops Fin(0) pieces and fuses adjacent finite segments.
ChainSpec normalize(const ChainSpec& c);

const char* to_string(SegKind k);
const char* to_string(CutKind k);
const char* to_string(Definability d);
std::string describe(const ChainSpec& c);
std::string describe(const ChainSpec& c, const Cut& cut);

}  // namespace oagkit
