#include "oagkit/pair.hpp"

#include <algorithm>

namespace oagkit {

PairSpec identity_pair(const GroupSpec& g) { return make_pair(g, g, g.name.empty() ? "identity" : g.name + " in itself"); }

PairSpec make_pair(GroupSpec G, GroupSpec H, std::string name) {
    if (G.spine.segments.size() != H.spine.segments.size())
        throw std::invalid_argument("default embedding needs matching segment counts");
    PairSpec p{std::move(name), std::move(G), std::move(H), {}};
    for (std::size_t i = 0; i < p.G.spine.segments.size(); ++i) p.embedding.push_back({i, i, Rational(0)});
    validate(p);
    return p;
}

namespace {

std::optional<std::size_t> generator_named(const GroupSpec& g, const std::string& name) {
    for (std::size_t j = 0; j < g.generators.size(); ++j)
        if (g.generators[j].name == name) return j;
    return std::nullopt;
}

bool domain_within(const RibSpec& small, const RibSpec& big) {
    auto sample = [](const RibSpec& r) {
        std::vector<Coord> xs{Coord(Rational(1)), Coord(Rational(-3))};
        if (r.domain != DomainKind::Int && r.domain != DomainKind::ZStar)
            for (long d : {2L, 3L, 5L, 7L, 11L, 13L}) xs.emplace_back(Rational(1, d));
        if (r.domain == DomainKind::ZStar) xs.emplace_back(Rational(1), Rational(1));
        return xs;
    };
    for (const auto& x : sample(small))
        if (in_domain(small, x) && !in_domain(big, x)) return false;
    return small.discrete == big.discrete || big.domain == DomainKind::ZStar;
}

std::vector<Position> sample_positions(const GroupSpec& g, std::size_t s) {
    std::vector<Position> out;
    const Segment& seg = g.spine.segments[s];
    if (seg.kind == SegKind::Fin) {
        for (std::int64_t k = 0; k < seg.size; ++k) out.push_back(Position::at(s, k));
        return out;
    }
    for (std::int64_t k = 0; k < 8; ++k) out.push_back(Position::at(s, k));
    for (const auto& [r, where] : ribs_on_segment(g, s).pieces)
        for (const auto& x : where.coords) out.push_back(Position::at(s, x));
    return out;
}

}  // namespace

void validate(const PairSpec& p) {
    validate(p.G);
    validate(p.H);
    if (p.G.spine.trivial()) return;
    if (p.embedding.size() != p.G.spine.segments.size())
        throw std::invalid_argument("the embedding needs one entry per G-segment");
    for (std::size_t i = 0; i < p.embedding.size(); ++i) {
        const auto& e = p.embedding[i];
        if (e.g_seg != i) throw std::invalid_argument("embedding entries must follow the G-segments in order");
        if (e.h_seg >= p.H.spine.segments.size()) throw std::invalid_argument("embedding targets a missing H-segment");
        if (i && e.h_seg < p.embedding[i - 1].h_seg) throw std::invalid_argument("embedding is not order preserving");
        const Segment& gs = p.G.spine.segments[e.g_seg];
        const Segment& hs = p.H.spine.segments[e.h_seg];
        if (gs.kind != SegKind::Fin && (gs.kind != hs.kind || e.offset != 0))
            throw std::invalid_argument("infinite segments embed onto a segment of the same kind");
        if (i && e.h_seg == p.embedding[i - 1].h_seg && gs.kind != SegKind::Fin)
            throw std::invalid_argument("two G-segments share an infinite H-segment");
        for (const auto& gp : sample_positions(p.G, e.g_seg)) {
            Position hp = *embed(p, gp);
            validate(p.H.spine, hp);
            if (!domain_within(rib_at(p.G, gp), rib_at(p.H, hp)))
                throw std::invalid_argument("G-rib is not contained in the H-rib at an embedded position");
        }
    }
    for (const auto& gen : p.G.generators) {
        auto j = generator_named(p.H, gen.name);
        if (!j) throw std::invalid_argument("generator " + gen.name + " of G is missing from H");
        const auto& hg = p.H.generators[*j];
        if (hg.tail != gen.tail || hg.prefix != gen.prefix)
            throw std::invalid_argument("generator " + gen.name + " differs between G and H");
        const auto& e = p.embedding.back();
        if (e.h_seg != p.H.terminal_segment() || e.offset != 0)
            throw std::invalid_argument("shared generators need the terminal segments to coincide");
    }
}

std::optional<Position> embed(const PairSpec& p, const Position& g_pos) {
    if (g_pos.inf) return g_pos;
    for (const auto& e : p.embedding)
        if (e.g_seg == g_pos.seg) return Position::at(e.h_seg, g_pos.coord + e.offset);
    return std::nullopt;
}

std::optional<Position> preimage(const PairSpec& p, const Position& h_pos) {
    if (h_pos.inf) return h_pos;
    for (const auto& e : p.embedding) {
        if (e.h_seg != h_pos.seg) continue;
        Position gp = Position::at(e.g_seg, h_pos.coord - e.offset);
        try {
            validate(p.G.spine, gp);
            return gp;
        } catch (const PositionOutOfDomain&) {
        }
    }
    return std::nullopt;
}

GroupElement to_H(const PairSpec& p, const GroupElement& g) {
    GroupElement h = g_zero(p.H);
    for (const auto& [pos, v] : g.finite) h.finite.emplace_back(*embed(p, pos), v);
    for (std::size_t j = 0; j < g.gens.size(); ++j)
        if (g.gens[j]) h.gens[*generator_named(p.H, p.G.generators[j].name)] += g.gens[j];
    return canonical(p.H, h);
}

std::optional<GroupElement> to_G(const PairSpec& p, const GroupElement& h0) {
    GroupElement h = canonical(p.H, h0);
    GroupElement g = g_zero(p.G);
    for (std::size_t j = 0; j < h.gens.size(); ++j) {
        if (!h.gens[j]) continue;
        auto k = generator_named(p.G, p.H.generators[j].name);
        if (!k) return std::nullopt;
        g.gens[*k] = h.gens[j];
    }
    for (const auto& [pos, v] : h.finite) {
        auto gp = preimage(p, pos);
        if (!gp) return std::nullopt;
        g.finite.emplace_back(*gp, v);
    }
    g = canonical(p.G, g);
    try {
        validate(p.G, g);
    } catch (const std::exception&) {
        return std::nullopt;
    }
    return g;
}

namespace {

// A G-coordinate w with c - w in m * (H-rib), m = 0 meaning w = c.
std::optional<Coord> absorb(const RibSpec& rg, const RibSpec& rh, const Coord& c, std::int64_t m) {
    if (m == 0) return in_domain(rg, c) ? std::optional<Coord>(c) : std::nullopt;
    std::vector<Coord> cand{c, Coord(c.fin)};
    if (is_integer(c.fin)) {
        Integer r = c.fin.get_num() % Integer(m);
        if (r < 0) r += m;
        cand.emplace_back(Rational(r));
    }
    cand.emplace_back();
    for (const auto& w : cand)
        if (in_domain(rg, w) && rib_divisible(rh, c - w, m)) return w;
    return std::nullopt;
}

}  // namespace

Approximation approximate(const PairSpec& p, const GroupElement& x0, std::int64_t m) {
    const GroupSpec& H = p.H;
    const GroupElement x = canonical(H, x0);
    GroupElement g = g_zero(p.G);
    for (std::size_t j = 0; j < x.gens.size(); ++j)
        if (auto k = generator_named(p.G, H.generators[j].name)) g.gens[*k] = x.gens[j];
    while (true) {
        const GroupElement r = g_sub(H, x, to_H(p, g));
        const SpineValue gamma = val_m(H, r, m);
        if (gamma.kind != SpineValue::Pos) return {Approximation::Attained, g, gamma, {}, {}};
        const Position& pos = gamma.pos;
        auto gp = preimage(p, pos);
        if (!gp) return {Approximation::Attained, g, gamma, {}, {}};
        const Coord c = coordinate(H, r, pos);
        auto w = absorb(rib_at(p.G, *gp), rib_at(H, pos), c, m);
        if (!w) return {Approximation::Attained, g, gamma, {}, {}};
        const std::size_t t = H.terminal_segment();
        const std::size_t hz = horizon(H, r);
        if (H.has_generators() && pos.seg == t && pos.coord >= static_cast<long>(hz) && !tail_value(H, r).is_zero()) {
            bool all = true;
            for (std::size_t n = hz; n <= tail_scan_end(H, hz, m) && all; ++n) {
                Position q = Position::at(t, static_cast<std::int64_t>(n));
                auto gq = preimage(p, q);
                all = gq && absorb(rib_at(p.G, *gq), rib_at(H, q), c, m) == w;
            }
            if (all) {
                if (p.G.mode == Mode::Hahn)
                    throw UnsupportedPresentation("G is a Hahn product holding this tail; name it as a generator of G");
                return {Approximation::NoMaximum, g, gamma, pos, *w};
            }
        }
        g = g_add(p.G, g, g_single(p.G, *gp, *w));
    }
}

}  // namespace oagkit
