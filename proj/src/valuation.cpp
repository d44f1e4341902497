#include "oagkit/valuation.hpp"

#include "oagkit/json_io.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>

namespace oagkit {

std::strong_ordering compare_values(const ChainSpec& c, const SpineValue& a, const SpineValue& b) {
    using SO = std::strong_ordering;
    if (a.is_inf() || b.is_inf()) {
        if (a.is_inf() && b.is_inf()) return SO::equal;
        return a.is_inf() ? SO::greater : SO::less;
    }
    if (a.kind == SpineValue::Pos && b.kind == SpineValue::Pos) return compare_positions(c, a.pos, b.pos);
    if (a.kind == SpineValue::Limit && b.kind == SpineValue::Limit) return a.seg <=> b.seg;
    if (a.kind == SpineValue::Limit) return b.pos.seg <= a.seg ? SO::greater : SO::less;
    return a.pos.seg <= b.seg ? SO::less : SO::greater;
}

bool same_value(const ChainSpec& c, const SpineValue& a, const SpineValue& b) { return compare_values(c, a, b) == 0; }

const SpineValue& min_value(const ChainSpec& c, const SpineValue& a, const SpineValue& b) {
    return compare_values(c, a, b) <= 0 ? a : b;
}

std::string describe(const SpineValue& v) { return to_json(v).dump(); }

SpineValue nat_val(const GroupSpec& g, const GroupElement& a) {
    auto supp = explicit_support(g, a);
    if (!supp.empty()) return SpineValue::at(supp.front().first);
    if (!tail_value(g, a).is_zero())
        return SpineValue::at(Position::at(g.terminal_segment(), static_cast<std::int64_t>(horizon(g, a))));
    return SpineValue::infinity();
}

namespace {

bool absorbable(const GroupSpec& g, const Position& p, const Coord& v, std::int64_t m) {
    return v.is_zero() || rib_divisible(rib_at(g, p), v, m).has_value();
}

}  // namespace

SpineValue val_m(const GroupSpec& g, const GroupElement& a, std::int64_t m) {
    if (m < 0) throw std::invalid_argument("modulus must be >= 0");
    if (m == 0) return nat_val(g, a);
    if (m == 1) return SpineValue::infinity();
    for (const auto& [p, v] : explicit_support(g, a))
        if (!absorbable(g, p, v, m)) return SpineValue::at(p);
    if (!g.has_generators()) return SpineValue::infinity();
    const Coord tau = tail_value(g, a);
    const std::size_t t = g.terminal_segment();
    const std::size_t h = horizon(g, a);
    if (!tau.is_zero()) {
        const std::size_t end = tail_scan_end(g, h, m);
        for (std::size_t n = h; n <= end; ++n) {
            Position p = Position::at(t, static_cast<std::int64_t>(n));
            if (!absorbable(g, p, tau, m)) return SpineValue::at(p);
        }
    }
    if (cancel_tail(g, a.gens, m) || g.mode == Mode::Hahn) return SpineValue::infinity();
    return SpineValue::limit(t);
}

bool ValueSet::contains(const SpineValue& v) const {
    switch (v.kind) {
        case SpineValue::Inf: return true;
        case SpineValue::Limit: return std::find(limits.begin(), limits.end(), v.seg) != limits.end();
        case SpineValue::Pos: {
            if (v.pos.seg >= members.size()) return false;
            const SegSet& s = members[v.pos.seg];
            bool listed = std::find(s.coords.begin(), s.coords.end(), v.pos.coord) != s.coords.end();
            switch (s.kind) {
                case RuleKind::All: return true;
                case RuleKind::FiniteSet: return listed;
                case RuleKind::CofiniteComplement: return !listed;
                case RuleKind::DenseCodense: return s.rational_class;
                default: return false;
            }
        }
    }
    return false;
}

namespace {

template <class Pred>
ValueSet value_set(const GroupSpec& g, Pred not_divisible, const SegSet& family) {
    ValueSet out{g.spine, {}, {}};
    if (g.spine.trivial()) return out;
    for (std::size_t s = 0; s < g.spine.segments.size(); ++s) {
        auto sr = ribs_on_segment(g, s);
        SegSet members = SegSet::none(), covered = SegSet::none();
        for (const auto& [r, where] : sr.pieces) {
            covered = set_union(covered, where);
            if (not_divisible(r)) members = set_union(members, where);
        }
        if (sr.localized_by_index) members = set_union(members, set_intersection(set_complement(covered), family));
        out.members.push_back(members);
    }
    return out;
}

// An element x = sum c_j gen_j (prefixes cleared) with val_m(x) a limit cut; small coefficients first.
std::optional<GroupElement> limit_witness(const GroupSpec& g, std::int64_t m, std::int64_t max_coeff) {
    const std::size_t k = g.generators.size();
    if (k == 0 || k > 3) return std::nullopt;
    auto value = [](std::int64_t i) { return i % 2 ? (i + 1) / 2 : -(i / 2); };  // 0, 1, -1, 2, -2, ...
    for (std::int64_t r = 1; r <= max_coeff; ++r) {
        std::vector<std::int64_t> idx(k, 0);
        while (true) {
            std::vector<std::int64_t> c(k);
            std::int64_t norm = 0;
            for (std::size_t j = 0; j < k; ++j) {
                c[j] = value(idx[j]);
                norm = std::max(norm, std::abs(c[j]));
            }
            if (norm == r) {
                GroupElement x = g_zero(g);
                x.gens = c;
                for (const auto& [p, v] : explicit_support(g, x)) x.finite.emplace_back(p, -v);
                x = canonical(g, x);
                if (val_m(g, x, m).kind == SpineValue::Limit) return x;
            }
            std::size_t j = 0;
            while (j < k && idx[j] == 2 * r) idx[j++] = 0;
            if (j == k) break;
            ++idx[j];
        }
    }
    return std::nullopt;
}

bool fully_divisible(const RibSpec& r) {
    if (r.discrete) return false;
    for (const auto& [p, d] : r.div)
        if (d.cls != IndexClass::One) return false;
    return true;
}

}  // namespace

ValueSet spine_m(const GroupSpec& g, std::int64_t m) {
    if (m < 0) throw std::invalid_argument("modulus must be >= 0");
    if (m == 0) return value_set(g, [](const RibSpec&) { return true; }, SegSet::all());
    if (m == 1) return value_set(g, [](const RibSpec&) { return false; }, SegSet::none());
    SegSet family{RuleKind::FiniteSet, {}};
    for (auto p : prime_factors(m)) family.coords.emplace_back(static_cast<long>(prime_index(p)));
    ValueSet out = value_set(g, [m](const RibSpec& r) { return !r.divisible_by(m); }, family);
    if (g.mode == Mode::Generators && g.has_generators() && limit_witness(g, m, default_bounds().max_coeff)) out.limits.push_back(g.terminal_segment());
    return out;
}

ValueSet spine_union(const GroupSpec& g) {
    ValueSet out = value_set(g, [](const RibSpec& r) { return !fully_divisible(r); }, SegSet::all());
    if (g.mode == Mode::Generators && g.has_generators()) {
        const auto b = default_bounds();
        for (std::int64_t m = 2; m <= b.max_modulus; ++m)
            if (limit_witness(g, m, b.max_coeff)) {
                out.limits.push_back(g.terminal_segment());
                break;
            }
    }
    return out;
}

std::string describe(const ValueSet& s) {
    std::string out;
    auto add = [&](const std::string& x) { out += (out.empty() ? "" : " ∪ ") + x; };
    for (std::size_t i = 0; i < s.members.size(); ++i) {
        const SegSet& m = s.members[i];
        const std::string seg = "seg" + std::to_string(i);
        switch (m.kind) {
            case RuleKind::All: add(seg); break;
            case RuleKind::FiniteSet: {
                std::string x;
                for (const auto& c : m.coords) x += (x.empty() ? "" : ",") + seg + ":" + c.get_str();
                add("{" + x + "}");
                break;
            }
            case RuleKind::CofiniteComplement: {
                std::string x;
                for (const auto& c : m.coords) x += (x.empty() ? "" : ",") + c.get_str();
                add(seg + "\\{" + x + "}");
                break;
            }
            case RuleKind::DenseCodense: add(seg + (m.rational_class ? "∩rational" : "∩irrational")); break;
            default: break;
        }
    }
    for (auto l : s.limits) add("{lim seg" + std::to_string(l) + "}");
    add("{∞}");
    return out;
}

Quotient quotient_by(const GroupSpec& g, const ValueSet& s) {
    Quotient q;
    if (g.spine.trivial()) {
        q.chain = ChainSpec{{Segment::fin(0)}, {}};
        return q;
    }
    const ChainSpec& c = g.spine;
    int pending = 0;  // 0, 1, or 2 meaning "more than one"
    std::optional<RibSpec> pending_rib;
    auto add_pending = [&](int n, std::optional<RibSpec> r) {
        if (n <= 0) return;
        if (pending == 0 && n == 1) pending_rib = std::move(r);
        pending = std::min(2, pending + n);
    };
    auto take_pending = [&]() {
        int p = pending;
        pending = 0;
        pending_rib.reset();
        return p;
    };
    auto finite_class = [&](QuotientClass cls, std::optional<std::size_t> src, Rational coord) {
        if (q.pieces.empty() || q.pieces.back().identity) {
            q.pieces.push_back({});
            q.pieces.back().source = src;
        }
        auto& piece = q.pieces.back();
        if (piece.source != src) piece.source.reset();
        piece.classes.push_back(std::move(cls));
        piece.member_coords.push_back(std::move(coord));
    };
    auto gap_class = [&](const std::string& label) {
        bool single = pending == 1;
        std::optional<RibSpec> r = single ? pending_rib : std::nullopt;
        take_pending();
        finite_class({single, r, label}, std::nullopt, Rational(0));
    };

    for (std::size_t si = 0; si < c.segments.size(); ++si) {
        const Segment& seg = c.segments[si];
        const SegSet& S = s.members[si];
        auto rib = [&](std::int64_t coord) { return rib_at(g, Position::at(si, coord)); };
        auto point_class = [&](const Rational& coord, int before) {
            int absorbed = take_pending() + before;
            Position p = Position::at(si, coord);
            finite_class({absorbed == 0, absorbed == 0 ? std::optional<RibSpec>(rib_at(g, p)) : std::nullopt,
                          describe(SpineValue::at(p))},
                         si, coord);
        };
        if (seg.kind == SegKind::Fin) {
            for (std::int64_t k = 0; k < seg.size; ++k) {
                if (s.contains(SpineValue::at(Position::at(si, k)))) point_class(Rational(static_cast<long>(k)), 0);
                else add_pending(1, rib(k));
            }
            continue;
        }
        if (S.empty()) {
            add_pending(2, std::nullopt);
            continue;
        }
        const bool identity = S.full() || S.kind == RuleKind::DenseCodense ||
                              (S.kind == RuleKind::CofiniteComplement && seg.dense());
        if (identity) {
            bool absorbs = false;
            if (pending) {
                if (seg.has_min() && S.full()) { absorbs = true; take_pending(); }
                else gap_class("gap below seg" + std::to_string(si));
            }
            QuotientPiece piece;
            piece.source = si;
            piece.identity = true;
            piece.first_absorbs = absorbs;
            q.pieces.push_back(piece);
            continue;
        }
        if (S.kind != RuleKind::FiniteSet)
            throw UnsupportedPresentation("quotient of a cofinite spine on a discrete infinite segment");
        std::vector<Rational> F = S.coords;
        std::sort(F.begin(), F.end());
        if (seg.kind == SegKind::OmegaStar) std::reverse(F.begin(), F.end());
        for (std::size_t i = 0; i < F.size(); ++i) {
            int before = 0;
            if (i == 0) {
                if (seg.kind == SegKind::Omega) before = F[0] > 0 ? static_cast<int>(std::min<long>(2, F[0].get_num().get_si())) : 0;
                else before = 2;
            } else if (seg.dense()) {
                before = 2;
            } else {
                Rational gap = seg.kind == SegKind::OmegaStar ? F[i - 1] - F[i] - 1 : F[i] - F[i - 1] - 1;
                before = static_cast<int>(std::min<long>(2, gap.get_num().get_si()));
            }
            point_class(F[i], before);
        }
        if (seg.kind == SegKind::OmegaStar) add_pending(static_cast<int>(std::min<long>(2, F.back().get_num().get_si())),
                                                        F.back() == 1 ? std::optional<RibSpec>(rib(0)) : std::nullopt);
        else add_pending(2, std::nullopt);
    }
    for (auto l : s.limits) {
        (void)l;
        int absorbed = take_pending();
        finite_class({absorbed == 0, std::nullopt, "limit"}, std::nullopt, Rational(0));
    }
    if (pending) gap_class("top block");

    for (const auto& piece : q.pieces) {
        if (piece.identity) q.chain.segments.push_back(c.segments[*piece.source]);
        else q.chain.segments.push_back(Segment::fin(static_cast<std::int64_t>(piece.classes.size())));
    }
    if (q.chain.segments.empty()) q.chain.segments.push_back(Segment::fin(0));
    return q;
}

Quotient t_spine(const GroupSpec& g, std::int64_t m) { return quotient_by(g, spine_m(g, m)); }

Quotient regular_spine(const GroupSpec& g) {
    Quotient q = quotient_by(g, spine_union(g));
    if (g.spine.trivial()) return q;
    // colour every class by the elementary class of its regular rib
    std::vector<std::pair<RibSpec, ColourRule>> colours;
    auto colour_for = [&](const RibSpec& r) -> ColourRule& {
        for (auto& [rep, col] : colours)
            if (rib_elem_equiv(rep, r) && rep.discrete == r.discrete && rep.cut_complete == r.cut_complete) return col;
        colours.push_back({r, ColourRule{"class:" + r.name(), {}, false}});
        return colours.back().second;
    };
    ColourRule composite{"class:composite", {}, false};
    ColourRule limit{"class:limit", {}, false};
    ColourRule localized{"class:Z(p_n)", {}, false};
    for (std::size_t i = 0; i < q.pieces.size(); ++i) {
        const auto& piece = q.pieces[i];
        if (piece.identity) {
            auto sr = ribs_on_segment(g, *piece.source);
            for (const auto& [r, where] : sr.pieces) {
                SegmentRule rule{i, where.kind, where.coords, where.rational_class, false};
                colour_for(r).rules.push_back(rule);
            }
            if (sr.localized_by_index) localized.rules.push_back({i, RuleKind::SchematicSingletons, {}, true, true});
            if (piece.first_absorbs) composite.rules.push_back({i, RuleKind::FiniteSet, {Rational(0)}, true, false});
            continue;
        }
        for (std::size_t k = 0; k < piece.classes.size(); ++k) {
            const auto& cls = piece.classes[k];
            Rational idx(static_cast<long>(k));
            if (cls.single && !cls.rib) {
                limit.rules.push_back({i, RuleKind::FiniteSet, {idx}, true, false});
            } else if (cls.single) {
                auto& col = colour_for(*cls.rib);
                if (!col.rules.empty() && col.rules.back().seg == i) col.rules.back().coords.push_back(idx);
                else col.rules.push_back({i, RuleKind::FiniteSet, {idx}, true, false});
            } else {
                if (!composite.rules.empty() && composite.rules.back().seg == i) composite.rules.back().coords.push_back(idx);
                else composite.rules.push_back({i, RuleKind::FiniteSet, {idx}, true, false});
            }
        }
    }
    for (auto& [r, col] : colours) q.chain.colours.push_back(col);
    if (!composite.rules.empty()) q.chain.colours.push_back(composite);
    if (!limit.rules.empty()) q.chain.colours.push_back(limit);
    if (!localized.rules.empty()) q.chain.colours.push_back(localized);
    return q;
}

namespace {

// Least member of S inside segment si at or above coordinate `from` (or from the bottom).
std::optional<TClass> least_in_segment(const ChainSpec& c, const ValueSet& s, std::size_t si,
                                       const std::optional<Rational>& from) {
    const Segment& seg = c.segments[si];
    const SegSet& S = s.members[si];
    auto member = [&](const Rational& x) { return TClass{TClass::Member, SpineValue::at(Position::at(si, x)), 0}; };
    auto gap_at = [&](std::optional<Rational> x) {
        TClass t{TClass::Gap, x ? SpineValue::at(Position::at(si, *x)) : SpineValue::infinity(), si};
        return t;
    };
    if (S.empty()) return std::nullopt;
    if (seg.kind == SegKind::Fin || S.kind == RuleKind::FiniteSet) {
        std::vector<Rational> cand;
        if (seg.kind == SegKind::Fin) {
            for (std::int64_t k = 0; k < seg.size; ++k)
                if (s.contains(SpineValue::at(Position::at(si, k)))) cand.emplace_back(static_cast<long>(k));
        } else {
            cand = S.coords;
        }
        std::optional<Rational> best;
        for (const auto& x : cand) {
            Position px = Position::at(si, x);
            if (from && compare_positions(c, px, Position::at(si, *from)) < 0) continue;
            if (!best || compare_positions(c, px, Position::at(si, *best)) < 0) best = x;
        }
        if (best) return member(*best);
        return std::nullopt;
    }
    if (S.full()) {
        if (from) return member(*from);
        if (seg.kind == SegKind::Omega) return member(Rational(0));
        return gap_at(std::nullopt);
    }
    if (S.kind == RuleKind::DenseCodense) {
        if (from && S.rational_class) return member(*from);
        return gap_at(from);
    }
    // cofinite
    auto excluded = [&](const Rational& x) { return std::find(S.coords.begin(), S.coords.end(), x) != S.coords.end(); };
    if (seg.dense()) {
        if (from && !excluded(*from)) return member(*from);
        return gap_at(from);
    }
    if (!from && seg.kind != SegKind::Omega) return gap_at(std::nullopt);
    Rational x = from ? *from : Rational(0);
    const int step = seg.kind == SegKind::OmegaStar ? -1 : 1;
    while (excluded(x)) {
        x += step;
        if (seg.kind == SegKind::OmegaStar && sgn(x) < 0) return std::nullopt;
    }
    return member(x);
}

}  // namespace

TClass t_project(const GroupSpec& g, const ValueSet& s, const Position& p) {
    if (p.inf) return {TClass::Top, SpineValue::infinity(), 0};
    validate(g.spine, p);
    for (std::size_t si = p.seg; si < g.spine.segments.size(); ++si) {
        auto r = least_in_segment(g.spine, s, si, si == p.seg ? std::optional<Rational>(p.coord) : std::nullopt);
        if (r) return *r;
        if (std::find(s.limits.begin(), s.limits.end(), si) != s.limits.end())
            return {TClass::Member, SpineValue::limit(si), 0};
    }
    return {TClass::Top, SpineValue::infinity(), 0};
}

bool same_class(const GroupSpec& g, const TClass& a, const TClass& b) {
    if (a.kind != b.kind) return false;
    if (a.kind == TClass::Top) return true;
    if (a.kind == TClass::Gap && a.seg != b.seg) return false;
    return same_value(g.spine, a.at, b.at);
}

bool pred_eq_bullet(const GroupSpec& g, const GroupElement& a, std::int64_t k) {
    if (k == 0) throw std::invalid_argument("k must be non-zero");
    SpineValue v = nat_val(g, a);
    if (v.is_inf()) throw ZeroArgument("=_k is undefined at 0");
    RibSpec r = rib_at(g, v.pos);
    if (!r.discrete) return false;
    return coordinate(g, a, v.pos) == Coord(Rational(static_cast<long>(k)));
}

bool pred_cong_bullet(const GroupSpec& g, const GroupElement& a, std::int64_t m, std::int64_t k) {
    if (m < 2 || k < 1 || k >= m) throw std::invalid_argument("need m >= 2 and 1 <= k < m");
    SpineValue v = val_m(g, a, m);
    if (v.kind != SpineValue::Pos) return false;
    RibSpec r = rib_at(g, v.pos);
    if (!r.discrete) return false;
    Coord residue = coordinate(g, a, v.pos) - Coord(Rational(static_cast<long>(k)));
    return rib_divisible(r, residue, m).has_value();
}

Bounds default_bounds() {
    Bounds b;
    if (const char* env = std::getenv("OAGKIT_BOUND")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && v > 0) b.max_coeff = v;
    }
    return b;
}

Check check_M(const GroupSpec& g, Bounds b) {
    Check c;
    if (g.mode != Mode::Generators) {
        c.status = CheckStatus::Holds;
        c.reasons.push_back({"maximality", g.mode == Mode::Hahn
                                               ? "Hahn products are pseudo-complete, hence satisfy (M)"
                                               : "elementarily equivalent to the Hahn product; (M) is first order",
                             nullptr});
        return c;
    }
    for (std::int64_t m = 2; m <= b.max_modulus; ++m) {
        if (auto x = limit_witness(g, m, b.max_coeff)) {
            c.status = CheckStatus::Fails;
            c.n = m;
            c.reasons.push_back({"hypothesis",
                                 "val^" + std::to_string(m) + " of the witness is a limit cut, the natural value of no element",
                                 Json{{"x", to_json(g, *x)}, {"m", m}, {"val_m", to_json(val_m(g, *x, m))}}});
            return c;
        }
    }
    c.status = CheckStatus::HoldsBounded;
    c.reasons.push_back({"hypothesis",
                         "no limit-cut value for m <= " + std::to_string(b.max_modulus) + " and generator coefficients <= " +
                             std::to_string(b.max_coeff),
                         nullptr});
    return c;
}

Check check_UR(const GroupSpec& g, std::int64_t max_n) {
    Check c;
    if (!g.spine.trivial())
        for (std::size_t s = 0; s < g.spine.segments.size(); ++s)
            if (ribs_on_segment(g, s).localized_by_index) {
                c.status = CheckStatus::Fails;
                c.reasons.push_back({"hypothesis",
                                     "the Z_(p_n) family makes every prime active; each N misses all but finitely many spine points",
                                     Json{{"segment", s}}});
                return c;
            }
    std::vector<RibSpec> nondiv;
    for (const auto& r : occurring_ribs(g))
        if (!fully_divisible(r)) nondiv.push_back(r);
    const bool union_limit = !spine_union(g).limits.empty();
    for (std::int64_t n = 2; n <= max_n; ++n) {
        bool ok = std::all_of(nondiv.begin(), nondiv.end(), [n](const RibSpec& r) { return !r.divisible_by(n); });
        if (ok && union_limit) ok = !spine_m(g, n).limits.empty();
        if (!ok) continue;
        c.status = CheckStatus::Holds;
        c.n = n;
        c.reasons.push_back({"hypothesis", "the spine for N = " + std::to_string(n) + " separates every regular class",
                             Json{{"N", n}}});
        return c;
    }
    c.status = CheckStatus::Fails;
    c.reasons.push_back({"hypothesis", "no N <= " + std::to_string(max_n) + " separates the regular classes", nullptr});
    return c;
}

std::optional<DeltaMax> delta_max(const GroupSpec& g, const GroupElement& a, std::int64_t m) {
    SpineValue gamma = val_m(g, a, m);
    if (gamma.kind == SpineValue::Limit) return std::nullopt;
    if (m == 0) return DeltaMax{g_zero(g), gamma};
    if (gamma.is_inf()) {
        auto d = g_in_mG(g, a, m);
        if (!d.witness) throw UnsupportedPresentation("the quotient by m lies outside the presented elements");
        return DeltaMax{*d.witness, gamma};
    }
    GroupElement star = g_zero(g);
    std::vector<Position> below;
    for (const auto& [p, v] : explicit_support(g, a))
        if (compare_positions(g.spine, p, gamma.pos) < 0) below.push_back(p);
    if (g.has_generators() && gamma.pos.seg == g.terminal_segment()) {
        const std::size_t h = horizon(g, a);
        for (std::size_t n = h; n < gamma.pos.coord.get_num().get_ui(); ++n)
            below.push_back(Position::at(g.terminal_segment(), static_cast<std::int64_t>(n)));
    }
    for (const auto& p : below) {
        auto b = rib_divisible(rib_at(g, p), coordinate(g, a, p), m);
        if (!b) throw std::logic_error("coordinate below val_m is not divisible");
        star.finite.emplace_back(p, *b);
    }
    star = canonical(g, star);
    return DeltaMax{star, gamma};
}

}  // namespace oagkit
