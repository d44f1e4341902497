#pragma once

#include "oagkit/classify.hpp"
#include "oagkit/formula.hpp"
#include "oagkit/json_io.hpp"
#include "oagkit/typedef.hpp"

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace oagkit::testing {

inline std::string data_path(const std::string& name) { return std::string(OAGKIT_DATA_DIR) + "/" + name; }
inline GroupSpec load(const std::string& name) { return group_from_json(load_json_file(data_path(name + ".json"))); }
inline PairSpec load_pair(const std::string& name) { return load_pair_file(data_path("pairs/" + name + ".json")); }
inline GroupElement pair_a(const PairSpec& p, const std::string& name) {
    return element_from_json(p.H, load_json_file(data_path("pairs/" + name + ".json")).at("a"));
}

struct Rng {
    std::mt19937_64 eng;
    explicit Rng(std::uint64_t seed) : eng(seed) {}
    std::int64_t uniform(std::int64_t lo, std::int64_t hi) { return std::uniform_int_distribution<std::int64_t>(lo, hi)(eng); }
    bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(eng); }
};

/// First `count` positions of the spine, in increasing order, taken segment by segment.
inline std::vector<Position> first_positions(const GroupSpec& g, std::size_t count) {
    std::vector<Position> out;
    for (std::size_t s = 0; s < g.spine.segments.size() && out.size() < count; ++s) {
        const Segment& seg = g.spine.segments[s];
        if (seg.kind == SegKind::Fin || seg.kind == SegKind::Omega) {
            const std::size_t n = seg.kind == SegKind::Fin ? static_cast<std::size_t>(seg.size) : count;
            for (std::size_t i = 0; i < n && out.size() < count; ++i) out.push_back(Position::at(s, static_cast<std::int64_t>(i)));
        } else if (seg.kind == SegKind::OmegaStar) {
            for (std::int64_t i = 0; out.size() < count && i < static_cast<std::int64_t>(count); ++i) out.push_back(Position::at(s, i));
        } else {
            for (std::int64_t i = 0; out.size() < count && i < static_cast<std::int64_t>(count); ++i) out.push_back(Position::at(s, i));
        }
    }
    std::sort(out.begin(), out.end(), [&](const Position& a, const Position& b) { return compare_positions(g.spine, a, b) < 0; });
    return out;
}

/// Integer coordinates (standard part only) in [-c, c] on the given positions.
inline GroupElement random_element(const GroupSpec& g, const std::vector<Position>& pos, std::int64_t c, Rng& rng,
                                   double density = 0.6) {
    std::vector<std::pair<Position, Coord>> co;
    for (const auto& p : pos)
        if (rng.coin(density)) co.emplace_back(p, Coord(Rational(static_cast<long>(rng.uniform(-c, c)))));
    return g_from_coords(g, co);
}

/// All elements with coordinates in [-c, c] on the given positions, in lexicographic order of the coefficient vectors.
template <class F>
void for_each_grid_element(const GroupSpec& g, const std::vector<Position>& pos, std::int64_t c, F&& f) {
    std::vector<std::int64_t> v(pos.size(), -c);
    while (true) {
        std::vector<std::pair<Position, Coord>> co;
        for (std::size_t i = 0; i < pos.size(); ++i)
            if (v[i]) co.emplace_back(pos[i], Coord(Rational(static_cast<long>(v[i]))));
        f(g_from_coords(g, co));
        std::size_t i = 0;
        while (i < v.size() && v[i] == c) v[i++] = -c;
        if (i == v.size()) return;
        ++v[i];
    }
}

/// Is there x in the rib with m x = c? Candidates num/den are enumerated from the rib's element domain.
inline bool rib_has_mth_part(const RibSpec& r, const Coord& c, std::int64_t m) {
    if (m == 0) return c.is_zero();
    // the nonstandard part of Z* is divisible by every integer, so only the standard part matters
    if (r.domain != DomainKind::ZStar && !c.standard()) return false;
    const long cn = c.fin.get_num().get_si(), cd = c.fin.get_den().get_si();
    // any solution num/den has den <= m * cd and |num| <= |cn| * den
    const long acn = cn < 0 ? -cn : cn;
    for (long den = 1; den <= m * cd; ++den) {
        bool allowed = true;
        switch (r.domain) {
            case DomainKind::Int:
            case DomainKind::ZStar: allowed = den == 1; break;
            case DomainKind::CoprimeTo:
                for (auto p : r.primes) allowed = allowed && den % p != 0;
                break;
            case DomainKind::Rat: break;
        }
        if (!allowed) continue;
        for (long num = -acn * den; num <= acn * den; ++num)
            if (m * num * cd == cn * den) return true;  // m num/den = cn/cd
    }
    return false;
}

/// val^m by the definition: the least listed gamma with a not in V_gamma + mG, inf if none.
/// The listed positions must contain the support of a and be an initial segment of the spine.
inline SpineValue brute_val_m(const GroupSpec& g, const GroupElement& a, std::int64_t m, const std::vector<Position>& pos) {
    if (m == 1) return SpineValue::infinity();
    for (std::size_t gi = 0; gi < pos.size(); ++gi) {
        // a - m x lies in V_gamma iff each coordinate up to gamma is m times a rib element
        bool inside = true;
        for (std::size_t d = 0; d <= gi && inside; ++d)
            inside = rib_has_mth_part(rib_at(g, pos[d]), coordinate(g, a, pos[d]), m);
        if (!inside) return SpineValue::at(pos[gi]);
    }
    return SpineValue::infinity();
}

}  // namespace oagkit::testing
