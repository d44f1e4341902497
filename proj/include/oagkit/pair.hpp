#pragma once

#include "oagkit/valuation.hpp"

#include <optional>
#include <string>
#include <vector>

namespace oagkit {

/// G-segment `g_seg` sits inside H-segment `h_seg`, H coordinate = G coordinate + offset.
struct SegmentEmbedding {
    std::size_t g_seg = 0;
    std::size_t h_seg = 0;
    Rational offset{0};
};

/// G inside H. Generators of G are generators of H with the same name and pattern.
struct PairSpec {
    std::string name;
    GroupSpec G;
    GroupSpec H;
    std::vector<SegmentEmbedding> embedding;
};

struct ElementInG : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

PairSpec identity_pair(const GroupSpec& g);
/// Segment-wise identity embedding; needs matching segment counts.
PairSpec make_pair(GroupSpec G, GroupSpec H, std::string name = {});
void validate(const PairSpec& p);

std::optional<Position> embed(const PairSpec& p, const Position& g_pos);
/// The G-position over an H-position, if the H-position lies in the image.
std::optional<Position> preimage(const PairSpec& p, const Position& h_pos);
GroupElement to_H(const PairSpec& p, const GroupElement& g);
/// Syntactic membership: every coordinate and generator of h comes from G.
std::optional<GroupElement> to_G(const PairSpec& p, const GroupElement& h);

/// Result of maximizing val^m_H(x - g) over g in G.
struct Approximation {
    enum Kind { Attained, NoMaximum } kind = Attained;
    GroupElement g_star;  // in G; for NoMaximum, the best element found before the tail
    SpineValue beta;      // Attained: the maximum
    // NoMaximum certificate: from `from` on, G absorbs the constant tail value `tail`
    // at every position of the terminal segment, but only finitely many at a time.
    Position from;
    Coord tail;
};
/// Greedy absorption of the coordinates of x in increasing spine order.
Approximation approximate(const PairSpec& p, const GroupElement& x, std::int64_t m);

}  // namespace oagkit
