#include "oagkit/group.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace oagkit {

namespace {

SegSet tidy(SegSet s) {
    std::sort(s.coords.begin(), s.coords.end());
    s.coords.erase(std::unique(s.coords.begin(), s.coords.end()), s.coords.end());
    if (s.kind == RuleKind::FiniteSet && s.coords.empty()) return SegSet::none();
    if (s.kind == RuleKind::CofiniteComplement && s.coords.empty()) return SegSet::all();
    if (s.kind == RuleKind::None || s.kind == RuleKind::All) s.coords.clear();
    return s;
}

std::vector<Rational> set_minus(const std::vector<Rational>& a, const std::vector<Rational>& b) {
    std::vector<Rational> out;
    for (const auto& x : a)
        if (std::find(b.begin(), b.end(), x) == b.end()) out.push_back(x);
    return out;
}

}  // namespace

SegSet set_union(const SegSet& a0, const SegSet& b0) {
    SegSet a = tidy(a0), b = tidy(b0);
    if (a.empty()) return b;
    if (b.empty()) return a;
    if (a.full() || b.full()) return SegSet::all();
    if (a.kind == RuleKind::CofiniteComplement && b.kind == RuleKind::FiniteSet) std::swap(a, b);
    if (a.kind == RuleKind::DenseCodense && b.kind != RuleKind::DenseCodense) std::swap(a, b);
    if (a.kind == RuleKind::FiniteSet && b.kind == RuleKind::FiniteSet) {
        auto c = a.coords;
        c.insert(c.end(), b.coords.begin(), b.coords.end());
        return tidy({RuleKind::FiniteSet, c});
    }
    if (a.kind == RuleKind::FiniteSet && b.kind == RuleKind::CofiniteComplement)
        return tidy({RuleKind::CofiniteComplement, set_minus(b.coords, a.coords)});
    if (a.kind == RuleKind::CofiniteComplement && b.kind == RuleKind::CofiniteComplement) {
        std::vector<Rational> both;
        for (const auto& x : a.coords)
            if (std::find(b.coords.begin(), b.coords.end(), x) != b.coords.end()) both.push_back(x);
        return tidy({RuleKind::CofiniteComplement, both});
    }
    if (a.kind == RuleKind::DenseCodense && b.kind == RuleKind::DenseCodense)
        return a.rational_class == b.rational_class ? a : SegSet::all();
    // b is dense-codense, a finite or cofinite; listed points are rational
    if (b.rational_class) return a.kind == RuleKind::FiniteSet ? b : SegSet::all();
    throw UnsupportedPresentation("cannot combine the irrational class with finitely many points");
}

SegSet set_complement(const SegSet& a0) {
    SegSet a = tidy(a0);
    switch (a.kind) {
        case RuleKind::None: return SegSet::all();
        case RuleKind::All: return SegSet::none();
        case RuleKind::FiniteSet: return tidy({RuleKind::CofiniteComplement, a.coords});
        case RuleKind::CofiniteComplement: return tidy({RuleKind::FiniteSet, a.coords});
        case RuleKind::DenseCodense: return {RuleKind::DenseCodense, {}, !a.rational_class};
        default: break;
    }
    throw UnsupportedPresentation("schematic colours cannot carry ribs");
}

SegSet set_intersection(const SegSet& a, const SegSet& b) {
    return set_complement(set_union(set_complement(a), set_complement(b)));
}

namespace {

SegSet selected(const GroupSpec& g, const RibSelector& sel, std::size_t seg) {
    switch (sel.kind) {
        case RibSelKind::All: return SegSet::all();
        case RibSelKind::Segment: return sel.seg == seg ? SegSet::all() : SegSet::none();
        case RibSelKind::Point:
            if (sel.pos.inf || sel.pos.seg != seg) return SegSet::none();
            return {RuleKind::FiniteSet, {sel.pos.coord}};
        case RibSelKind::Colour: {
            auto it = std::find_if(g.spine.colours.begin(), g.spine.colours.end(),
                                   [&](const auto& c) { return c.name == sel.colour; });
            if (it == g.spine.colours.end()) throw std::invalid_argument("unknown colour " + sel.colour);
            const SegmentRule* r = g.spine.rule_on(*it, seg);
            if (!r) return SegSet::none();
            if (r->kind == RuleKind::SchematicSingletons)
                throw UnsupportedPresentation("schematic colours cannot carry ribs; use localized_by_index");
            return tidy({r->kind, r->coords, r->rational_class});
        }
    }
    return SegSet::none();
}

bool selects(const GroupSpec& g, const RibSelector& sel, const Position& p) {
    switch (sel.kind) {
        case RibSelKind::All: return true;
        case RibSelKind::Segment: return sel.seg == p.seg;
        case RibSelKind::Point: return sel.pos == p;
        case RibSelKind::Colour: {
            auto it = std::find_if(g.spine.colours.begin(), g.spine.colours.end(),
                                   [&](const auto& c) { return c.name == sel.colour; });
            if (it == g.spine.colours.end()) throw std::invalid_argument("unknown colour " + sel.colour);
            return in_colour(g.spine, *it, p);
        }
    }
    return false;
}

}  // namespace

RibSpec rib_at(const GroupSpec& g, const Position& p) {
    if (p.inf) throw std::invalid_argument("no rib at inf");
    validate(g.spine, p);
    for (auto it = g.ribs.rbegin(); it != g.ribs.rend(); ++it) {
        if (!selects(g, it->on, p)) continue;
        if (it->localized_by_index) {
            if (!is_integer(p.coord) || sgn(p.coord) < 0)
                throw UnsupportedPresentation("localized ribs need natural coordinates");
            return RibSpec::localized(nth_prime(p.coord.get_num().get_ui()));
        }
        return it->rib;
    }
    throw std::invalid_argument("no rib assigned at a position of segment " + std::to_string(p.seg));
}

namespace {

// On Fin(k) a set is finite either way; prefer All / FiniteSet so that coverage is visible.
SegSet fit_to(const Segment& s, SegSet x) {
    if (s.kind != SegKind::Fin) return x;
    std::vector<Rational> in;
    for (std::int64_t c = 0; c < s.size; ++c) {
        Rational r(static_cast<long>(c));
        bool listed = std::find(x.coords.begin(), x.coords.end(), r) != x.coords.end();
        if (x.kind == RuleKind::All || (x.kind == RuleKind::FiniteSet && listed) ||
            (x.kind == RuleKind::CofiniteComplement && !listed))
            in.push_back(r);
    }
    if (static_cast<std::int64_t>(in.size()) == s.size) return SegSet::all();
    return tidy({RuleKind::FiniteSet, in});
}

}  // namespace

SegmentRibs ribs_on_segment(const GroupSpec& g, std::size_t seg) {
    SegmentRibs out;
    SegSet covered = SegSet::none();
    const Segment& sg = g.spine.segments.at(seg);
    for (auto it = g.ribs.rbegin(); it != g.ribs.rend() && !covered.full(); ++it) {
        SegSet cls = fit_to(sg, selected(g, it->on, seg));
        if (cls.empty()) continue;
        SegSet fresh = fit_to(sg, set_intersection(cls, set_complement(covered)));
        if (!fresh.empty()) {
            if (it->localized_by_index) {
                if (!cls.full()) throw UnsupportedPresentation("localized ribs must cover a whole segment");
                out.localized_by_index = true;
            } else {
                out.pieces.emplace_back(it->rib, fresh);
            }
        }
        covered = fit_to(sg, set_union(covered, cls));
    }
    if (!covered.full() && !(g.spine.trivial()))
        throw std::invalid_argument("segment " + std::to_string(seg) + " has positions without a rib");
    return out;
}

std::vector<RibSpec> occurring_ribs(const GroupSpec& g, std::size_t family_bound) {
    std::vector<RibSpec> out;
    auto add = [&](const RibSpec& r) {
        for (const auto& x : out)
            if (same_rib(x, r)) return;
        out.push_back(r);
    };
    if (g.spine.trivial()) return out;
    for (std::size_t s = 0; s < g.spine.segments.size(); ++s) {
        auto sr = ribs_on_segment(g, s);
        for (const auto& [r, where] : sr.pieces) add(r);
        if (sr.localized_by_index)
            for (std::size_t n = 0; n < family_bound; ++n) add(RibSpec::localized(nth_prime(n)));
    }
    return out;
}

void validate(const GroupSpec& g) {
    validate(g.spine);
    if (g.mode == Mode::Sum && !g.generators.empty())
        throw std::invalid_argument("a lexicographic sum has no generators; use the generators mode");
    if (g.spine.trivial()) {
        if (!g.generators.empty()) throw std::invalid_argument("the trivial group has no generators");
        return;
    }
    for (std::size_t s = 0; s < g.spine.segments.size(); ++s) (void)ribs_on_segment(g, s);
    if (g.has_generators()) {
        const std::size_t t = g.terminal_segment();
        if (g.spine.segments[t].kind != SegKind::Omega)
            throw std::invalid_argument("generators live on a terminal Omega segment");
        for (const auto& gen : g.generators) {
            if (gen.tail.is_zero()) throw std::invalid_argument("generator " + gen.name + " has a zero tail");
            for (std::size_t n = 0; n <= gen.prefix.size(); ++n) {
                Position p = Position::at(t, static_cast<std::int64_t>(n));
                if (!in_domain(rib_at(g, p), gen.at(n)))
                    throw std::invalid_argument("generator " + gen.name + " leaves the rib domain");
            }
        }
    }
}

GroupElement g_zero(const GroupSpec& g) { return {{}, std::vector<std::int64_t>(g.generators.size(), 0)}; }

GroupElement canonical(const GroupSpec& g, GroupElement a) {
    a.gens.resize(g.generators.size(), 0);
    std::sort(a.finite.begin(), a.finite.end(), [&](const auto& x, const auto& y) {
        return compare_positions(g.spine, x.first, y.first) < 0;
    });
    std::vector<std::pair<Position, Coord>> merged;
    for (auto& [p, v] : a.finite) {
        if (p.inf) throw std::invalid_argument("elements have no coordinate at inf");
        if (!merged.empty() && merged.back().first == p) merged.back().second += v;
        else merged.emplace_back(p, v);
    }
    a.finite.clear();
    for (auto& e : merged)
        if (!e.second.is_zero()) a.finite.push_back(std::move(e));
    return a;
}

GroupElement g_single(const GroupSpec& g, const Position& p, const Coord& v) {
    GroupElement a = g_zero(g);
    a.finite.emplace_back(p, v);
    return canonical(g, a);
}

GroupElement g_generator(const GroupSpec& g, std::size_t j, std::int64_t coeff) {
    if (j >= g.generators.size()) throw std::out_of_range("generator index");
    GroupElement a = g_zero(g);
    a.gens[j] = coeff;
    return a;
}

GroupElement g_from_coords(const GroupSpec& g, const std::vector<std::pair<Position, Coord>>& coords) {
    GroupElement a = g_zero(g);
    a.finite = coords;
    return canonical(g, a);
}

Coord coordinate(const GroupSpec& g, const GroupElement& a, const Position& p) {
    Coord v;
    for (const auto& [q, x] : a.finite)
        if (q == p) v += x;
    if (g.has_generators() && !p.inf && p.seg == g.terminal_segment()) {
        const std::size_t n = p.coord.get_num().get_ui();
        for (std::size_t j = 0; j < g.generators.size(); ++j)
            if (a.gens[j]) v += Rational(static_cast<long>(a.gens[j])) * g.generators[j].at(n);
    }
    return v;
}

Coord tail_value(const GroupSpec& g, const GroupElement& a) {
    Coord v;
    if (!g.has_generators()) return v;
    for (std::size_t j = 0; j < g.generators.size(); ++j)
        if (a.gens[j]) v += Rational(static_cast<long>(a.gens[j])) * g.generators[j].tail;
    return v;
}

std::size_t horizon(const GroupSpec& g, const GroupElement& a) {
    if (!g.has_generators()) return 0;
    std::size_t h = 0;
    for (std::size_t j = 0; j < g.generators.size(); ++j)
        if (a.gens[j]) h = std::max(h, g.generators[j].prefix.size());
    for (const auto& [p, v] : a.finite)
        if (p.seg == g.terminal_segment()) h = std::max<std::size_t>(h, p.coord.get_num().get_ui() + 1);
    return h;
}

std::vector<std::pair<Position, Coord>> explicit_support(const GroupSpec& g, const GroupElement& a) {
    if (!g.has_generators()) return a.finite;
    std::vector<std::pair<Position, Coord>> out;
    const std::size_t t = g.terminal_segment();
    for (const auto& e : a.finite)
        if (e.first.seg != t) out.push_back(e);
    const std::size_t h = horizon(g, a);
    for (std::size_t n = 0; n < h; ++n) {
        Position p = Position::at(t, static_cast<std::int64_t>(n));
        Coord v = coordinate(g, a, p);
        if (!v.is_zero()) out.emplace_back(p, v);
    }
    return out;
}

void validate(const GroupSpec& g, const GroupElement& a) {
    if (a.gens.size() != g.generators.size()) throw std::invalid_argument("generator coefficient count mismatch");
    for (const auto& [p, v] : explicit_support(g, a)) {
        validate(g.spine, p);
        if (!in_domain(rib_at(g, p), v)) throw std::domain_error("coordinate outside the rib at that position");
    }
}

namespace {
bool in_order(const GroupSpec& g, const GroupElement& a) {
    for (std::size_t i = 0; i < a.finite.size(); ++i) {
        if (a.finite[i].first.inf || a.finite[i].second.is_zero()) return false;
        if (i && compare_positions(g.spine, a.finite[i - 1].first, a.finite[i].first) >= 0) return false;
    }
    return true;
}
}  // namespace

GroupElement g_add_scaled(const GroupSpec& g, const GroupElement& a, const GroupElement& b, std::int64_t k) {
    if (k == 0) return in_order(g, a) ? a : canonical(g, a);
    GroupElement c;
    c.gens = a.gens;
    c.gens.resize(g.generators.size(), 0);
    for (std::size_t j = 0; j < b.gens.size(); ++j) c.gens[j] += k * b.gens[j];
    const Rational q(static_cast<long>(k));
    auto scaled = [&](const Coord& v) { return k == 1 ? v : (k == -1 ? -v : q * v); };
    if (!in_order(g, a) || !in_order(g, b)) {
        c.finite = a.finite;
        for (const auto& [p, v] : b.finite) c.finite.emplace_back(p, scaled(v));
        return canonical(g, std::move(c));
    }
    c.finite.reserve(a.finite.size() + b.finite.size());
    std::size_t i = 0, j = 0;
    while (i < a.finite.size() || j < b.finite.size()) {
        auto o = j == b.finite.size() ? std::strong_ordering::less
               : i == a.finite.size() ? std::strong_ordering::greater
                                      : compare_positions(g.spine, a.finite[i].first, b.finite[j].first);
        if (o < 0) c.finite.push_back(a.finite[i++]);
        else if (o > 0) { c.finite.emplace_back(b.finite[j].first, scaled(b.finite[j].second)); ++j; }
        else {
            Coord v = a.finite[i].second + scaled(b.finite[j].second);
            if (!v.is_zero()) c.finite.emplace_back(a.finite[i].first, std::move(v));
            ++i, ++j;
        }
    }
    return c;
}

GroupElement g_add(const GroupSpec& g, const GroupElement& a, const GroupElement& b) { return g_add_scaled(g, a, b, 1); }

GroupElement g_neg(const GroupSpec& g, const GroupElement& a) { return g_scale(g, a, -1); }

GroupElement g_sub(const GroupSpec& g, const GroupElement& a, const GroupElement& b) {
    return g_add_scaled(g, a, b, -1);
}

GroupElement g_scale(const GroupSpec& g, const GroupElement& a, std::int64_t k) {
    if (k == 0) return g_zero(g);
    GroupElement c = a;
    c.gens.resize(g.generators.size(), 0);
    for (auto& x : c.gens) x *= k;
    if (k == -1) {
        for (auto& e : c.finite) e.second = -e.second;
    } else if (k != 1) {
        const Rational q(static_cast<long>(k));
        for (auto& e : c.finite) e.second = q * e.second;
    }
    return in_order(g, c) ? c : canonical(g, std::move(c));
}

std::strong_ordering g_compare(const GroupSpec& g, const GroupElement& a, const GroupElement& b) {
    GroupElement d = g_sub(g, a, b);
    if (!g.has_generators()) {
        int s = d.finite.empty() ? 0 : d.finite.front().second.sign();
        return s < 0 ? std::strong_ordering::less : (s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }
    auto supp = explicit_support(g, d);
    int s = supp.empty() ? tail_value(g, d).sign() : supp.front().second.sign();
    return s < 0 ? std::strong_ordering::less : (s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

bool g_equal(const GroupSpec& g, const GroupElement& a, const GroupElement& b) { return g_compare(g, a, b) == 0; }
bool g_is_zero(const GroupSpec& g, const GroupElement& a) { return g_equal(g, a, g_zero(g)); }

namespace {
std::int64_t mod(std::int64_t x, std::int64_t m) { return ((x % m) + m) % m; }
}  // namespace

std::optional<std::vector<std::int64_t>> cancel_tail(const GroupSpec& g, const std::vector<std::int64_t>& c,
                                                     std::int64_t m, std::int64_t bound) {
    const std::size_t k = g.generators.size();
    if (m == 0) {
        Coord t;
        for (std::size_t j = 0; j < k; ++j) t += Rational(static_cast<long>(c[j])) * g.generators[j].tail;
        if (t.is_zero()) return c;
        return std::nullopt;
    }
    if (std::all_of(c.begin(), c.end(), [&](auto x) { return mod(x, m) == 0; }))
        return std::vector<std::int64_t>(k, 0);
    {
        Coord t;
        for (std::size_t j = 0; j < k; ++j) t += Rational(static_cast<long>(c[j])) * g.generators[j].tail;
        if (t.is_zero()) return c;
    }
    if (k <= 1) return std::nullopt;
    // bounded search over representatives of c mod m
    std::vector<std::int64_t> e(k);
    std::vector<std::int64_t> step(k, -bound);
    while (true) {
        Coord t;
        for (std::size_t j = 0; j < k; ++j) {
            e[j] = mod(c[j], m) + step[j] * m;
            t += Rational(static_cast<long>(e[j])) * g.generators[j].tail;
        }
        if (t.is_zero()) return e;
        std::size_t j = 0;
        while (j < k && step[j] == bound) step[j++] = -bound;
        if (j == k) return std::nullopt;
        ++step[j];
    }
}

std::size_t tail_scan_end(const GroupSpec& g, std::size_t h, std::int64_t m) {
    std::size_t end = h;
    auto sr = ribs_on_segment(g, g.terminal_segment());
    for (const auto& [r, where] : sr.pieces)
        for (const auto& x : where.coords) end = std::max<std::size_t>(end, x.get_num().get_ui() + 1);
    if (sr.localized_by_index && m > 1)
        for (auto p : prime_factors(m)) end = std::max<std::size_t>(end, static_cast<std::size_t>(prime_index(p)) + 1);
    return end;
}

Divisibility g_in_mG(const GroupSpec& g, const GroupElement& a, std::int64_t m) {
    if (m < 1) throw std::invalid_argument("modulus must be >= 1");
    if (m == 1) return {true, a};
    GroupElement rest = a;
    GroupElement gen_part = g_zero(g);
    if (g.has_generators()) {
        auto e = cancel_tail(g, a.gens, m);
        if (!e && g.mode == Mode::Hahn) {
            // the Hahn product holds the quotient even when no generator combination does
            for (const auto& [p, v] : explicit_support(g, a))
                if (!rib_divisible(rib_at(g, p), v, m)) return {false, std::nullopt};
            const Coord tau = tail_value(g, a);
            const std::size_t h = horizon(g, a);
            for (std::size_t n = h; n <= tail_scan_end(g, h, m); ++n)
                if (!rib_divisible(rib_at(g, Position::at(g.terminal_segment(), static_cast<std::int64_t>(n))), tau, m))
                    return {false, std::nullopt};
            return {true, std::nullopt};
        }
        if (!e) return {false, std::nullopt};
        for (std::size_t j = 0; j < a.gens.size(); ++j) gen_part.gens[j] = (a.gens[j] - (*e)[j]) / m;
        rest = g_sub(g, a, g_scale(g, gen_part, m));
    }
    // rest has a cancelled tail, so its coordinates vanish past the horizon
    GroupElement y = g_zero(g);
    for (const auto& [p, v] : explicit_support(g, rest)) {
        auto b = rib_divisible(rib_at(g, p), v, m);
        if (!b) return {false, std::nullopt};
        y.finite.emplace_back(p, *b);
    }
    GroupElement w = g_add(g, canonical(g, y), gen_part);
    if (!g_is_zero(g, g_sub(g, a, g_scale(g, w, m)))) throw std::logic_error("divisibility witness failed to verify");
    return {true, w};
}

Skeleton skeleton(const GroupSpec& g) {
    Skeleton s{g.spine, {}};
    if (g.spine.trivial()) return s;
    for (std::size_t i = 0; i < g.spine.segments.size(); ++i) s.ribs.push_back(ribs_on_segment(g, i));
    return s;
}

}  // namespace oagkit
