#include "oagkit/pseudo.hpp"

#include <algorithm>

namespace oagkit {

Coord SequenceRule::at(std::size_t i) const {
    if (i < prefix.size()) return prefix[i];
    if (cycle.empty()) return {};
    return cycle[(i - prefix.size()) % cycle.size()];
}

GroupElement SequenceRule::term(const GroupSpec& g, std::size_t i) const {
    GroupElement a = g_zero(g);
    for (std::size_t k = 0; k < i + offset; ++k) {
        Coord v = at(k);
        if (!v.is_zero()) a.finite.emplace_back(Position::at(seg, static_cast<std::int64_t>(k)), v);
    }
    return canonical(g, a);
}

PseudoSequence with_rule_terms(const GroupSpec& g, const PseudoSequence& s, std::size_t extra) {
    PseudoSequence out = s;
    for (auto& t : out.terms) t = canonical(g, t);
    if (!s.rule) return out;
    for (std::size_t i = 0; i < extra; ++i) out.terms.push_back(s.rule->term(g, s.terms.size() + i));
    return out;
}

namespace {

std::vector<GroupElement> canonical_terms(const GroupSpec& g, const std::vector<GroupElement>& ts) {
    std::vector<GroupElement> out;
    for (const auto& t : ts) out.push_back(canonical(g, t));
    return out;
}

}  // namespace

CauchyCheck is_pseudo_cauchy(const GroupSpec& g, const PseudoSequence& s) {
    const auto a = canonical_terms(g, s.terms);
    const std::size_t n = a.size();
    if (n < 3) throw TooShort("a pseudo-Cauchy check needs at least 3 terms");
    // v[i][j] = val_m(a_i - a_j)
    std::vector<std::vector<SpineValue>> v(n, std::vector<SpineValue>(n));
    CauchyCheck out;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            v[i][j] = val_m(g, g_sub(g, a[i], a[j]), s.modulus);
            out.degenerate |= v[i][j].is_inf();
        }
    // the largest violating i decides the threshold
    std::optional<std::array<std::size_t, 3>> last;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            for (std::size_t k = j + 1; k < n; ++k)
                if (compare_values(g.spine, v[i][j], v[j][k]) >= 0 && (!last || i >= (*last)[0]))
                    last = std::array<std::size_t, 3>{i, j, k};
    out.threshold = last ? (*last)[0] + 1 : 0;
    out.pseudo_cauchy = n - std::min(n, out.threshold) >= 3;
    if (!out.pseudo_cauchy) out.violation = last;
    return out;
}

bool is_pseudo_limit(const GroupSpec& g, const PseudoSequence& s0, const GroupElement& l) {
    const PseudoSequence s = with_rule_terms(g, s0, s0.rule ? 8 : 0);
    const CauchyCheck c = is_pseudo_cauchy(g, s);
    if (!c.pseudo_cauchy) throw NotPseudoCauchy("the sequence is not pseudo-Cauchy");
    const GroupElement lim = canonical(g, l);
    for (std::size_t i = c.threshold; i + 1 < s.terms.size(); ++i) {
        SpineValue step = val_m(g, g_sub(g, s.terms[i], s.terms[i + 1]), s.modulus);
        SpineValue to_limit = val_m(g, g_sub(g, s.terms[i], lim), s.modulus);
        if (!same_value(g.spine, step, to_limit)) return false;
    }
    return true;
}

HahnLimit hahn_pseudo_limit(const GroupSpec& g, const PseudoSequence& s) {
    if (g.mode != Mode::Hahn) throw std::invalid_argument("pseudo-limits are taken in a Hahn product");
    PseudoSequence base = s;
    if (s.modulus >= 2) {
        // a rule whose differences already have val = val^m is its own lift
        const PseudoSequence probe = with_rule_terms(g, s, s.rule ? 8 : 0);
        bool own_lift = s.rule.has_value();
        for (std::size_t i = 0; own_lift && i + 1 < probe.terms.size(); ++i) {
            const GroupElement d = g_sub(g, probe.terms[i + 1], probe.terms[i]);
            own_lift = same_value(g.spine, nat_val(g, d), val_m(g, d, s.modulus));
        }
        if (own_lift) {
            base.modulus = 0;
        } else {
            base = lift_mod_m(g, s);
            base.rule.reset();
        }
    }
    if (!is_pseudo_cauchy(g, with_rule_terms(g, base, base.rule ? 8 : 0)).pseudo_cauchy)
        throw NotPseudoCauchy("the sequence is not pseudo-Cauchy");
    HahnLimit out{false, g, g_zero(g), {}};
    if (!base.rule) {
        // on a presented prefix the last term already is a pseudo-limit
        out.representable = true;
        out.limit = canonical(g, base.terms.back());
        out.reason = "no rule: the last presented term";
        return out;
    }
    const SequenceRule& r = *base.rule;
    const bool constant_cycle = std::all_of(r.cycle.begin(), r.cycle.end(), [&](const Coord& c) { return c == r.cycle.front(); });
    if (!constant_cycle) {
        out.reason = "the coordinate pattern is not eventually constant";
        return out;
    }
    GroupElement lim = g_zero(g);
    for (std::size_t k = 0; k < r.prefix.size(); ++k)
        if (!r.prefix[k].is_zero()) lim.finite.emplace_back(Position::at(r.seg, static_cast<std::int64_t>(k)), r.prefix[k]);
    if (!r.cycle.empty() && !r.cycle.front().is_zero()) {
        if (r.seg != g.terminal_segment() || g.spine.segments[r.seg].kind != SegKind::Omega) {
            out.reason = "an infinite tail off the terminal omega segment";
            return out;
        }
        Generator gen{"lim", r.prefix, r.cycle.front()};
        out.presentation.generators.push_back(gen);
        lim = g_zero(out.presentation);
        lim.gens.back() = 1;
    }
    out.limit = canonical(out.presentation, lim);
    out.representable = true;
    out.reason = r.cycle.empty() || r.cycle.front().is_zero() ? "finite support" : "eventually constant tail";
    return out;
}

PseudoSequence lift_mod_m(const GroupSpec& g, const PseudoSequence& s) {
    if (s.modulus < 2) throw std::invalid_argument("lifting needs a modulus m >= 2");
    if (!is_pseudo_cauchy(g, s).pseudo_cauchy) throw NotPseudoCauchy("the sequence is not pseudo-Cauchy under val^m");
    const auto a = canonical_terms(g, s.terms);
    PseudoSequence out;
    out.modulus = 0;
    out.terms.push_back(a.front());
    for (std::size_t i = 0; i + 1 < a.size(); ++i) {
        const GroupElement d = g_sub(g, a[i + 1], a[i]);
        auto dm = delta_max(g, d, s.modulus);
        if (!dm) throw LiftObstruction("val^m of a difference is not attained by any congruent element");
        const GroupElement b = g_sub(g, d, g_scale(g, dm->g_star, s.modulus));
        if (!same_value(g.spine, nat_val(g, b), dm->gamma))
            throw LiftObstruction("the chosen representative has the wrong natural value");
        out.terms.push_back(g_add(g, out.terms.back(), b));
    }
    return out;
}

const char* to_string(Immediacy i) {
    switch (i) {
        case Immediacy::Immediate: return "Immediate";
        case Immediacy::NotImmediate: return "NotImmediate";
        case Immediacy::NoMaximumDetected: return "NoMaximumDetected";
    }
    return "?";
}

ImmediateCheck immediate_ext_check(const PairSpec& p, const GroupElement& h, std::int64_t m) {
    if (to_G(p, h)) throw ElementInG("the element already lies in G");
    ImmediateCheck out;
    out.approx = approximate(p, h, m);
    if (out.approx.kind == Approximation::NoMaximum) {
        out.status = Immediacy::NoMaximumDetected;
    } else {
        out.status = Immediacy::NotImmediate;
        out.witness = out.approx.beta;
    }
    return out;
}

ImmediateCheck pair_immediate(const PairSpec& p, std::int64_t m) {
    ImmediateCheck out;
    out.status = Immediacy::Immediate;
    const GroupSpec& H = p.H;
    if (H.spine.trivial()) return out;
    // the skeleton must not grow
    for (std::size_t s = 0; s < H.spine.segments.size(); ++s) {
        const Segment& hs = H.spine.segments[s];
        std::vector<Position> probe;
        if (hs.kind == SegKind::Fin)
            for (std::int64_t k = 0; k < hs.size; ++k) probe.push_back(Position::at(s, k));
        else
            for (std::int64_t k = 0; k < 8; ++k) probe.push_back(Position::at(s, k));
        for (const auto& hp : probe) {
            auto gp = preimage(p, hp);
            if (!gp || !same_rib(rib_at(p.G, *gp), rib_at(H, hp))) {
                out.status = Immediacy::NotImmediate;
                out.witness = SpineValue::at(hp);
                return out;
            }
        }
    }
    for (std::size_t j = 0; j < H.generators.size(); ++j) {
        GroupElement h = g_generator(H, j);
        if (to_G(p, h)) continue;
        ImmediateCheck c = immediate_ext_check(p, h, m);
        if (c.status != Immediacy::NoMaximumDetected) return c;
        out.approx = c.approx;
    }
    return out;
}

}  // namespace oagkit
