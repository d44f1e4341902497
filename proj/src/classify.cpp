#include "oagkit/classify.hpp"

#include "oagkit/json_io.hpp"

#include <algorithm>
#include <numeric>

namespace oagkit {

namespace {

struct Tally {
    bool failed = false;
    bool unknown = false;
    bool uniform = true;

    void note(const Verdict& v, bool counts_uniform = true) {
        failed |= v.status == Status::NotStablyEmbedded;
        unknown |= v.status == Status::Unknown;
        if (counts_uniform) uniform &= v.status == Status::UniformlyStablyEmbedded;
    }
    Status status(bool allow_uniform) const {
        if (failed) return Status::NotStablyEmbedded;
        if (unknown) return Status::Unknown;
        return allow_uniform && uniform ? Status::UniformlyStablyEmbedded : Status::StablyEmbedded;
    }
};

Verdict rib_verdict(const RibSpec& r) {
    Verdict v = rib_stably_embedded(r);
    if (v.stably_embedded() && rib_uniformly_stably_embedded(r)) v.status = Status::UniformlyStablyEmbedded;
    return v;
}

Verdict class_verdict(const QuotientClass& c) {
    if (c.single && c.rib) return rib_verdict(*c.rib);
    Verdict v;
    if (c.single) {
        v.status = Status::Unknown;
        v.add("hypothesis", "class " + c.label + " is a limit cut with no rib of its own", Json{{"class", c.label}});
        return v;
    }
    v.status = Status::NotStablyEmbedded;
    v.add("rib",
          "class " + c.label + " is a non-archimedean regular group: a nonstandard Presburger model or a dense group "
          "whose divisible hull is not R",
          Json{{"class", c.label}});
    return v;
}

bool has_dense_codense(const ChainSpec& c) {
    for (const auto& col : c.colours)
        for (const auto& r : col.rules)
            if (r.kind == RuleKind::DenseCodense) return true;
    return false;
}

// Verdicts on every regular rib of G, in spine order.
std::vector<Verdict> regular_rib_verdicts(const GroupSpec& g, const Quotient& q) {
    std::vector<Verdict> out;
    for (const auto& piece : q.pieces) {
        if (!piece.identity) {
            for (const auto& c : piece.classes) out.push_back(class_verdict(c));
            continue;
        }
        if (piece.first_absorbs) out.push_back(class_verdict({false, std::nullopt, "least point of seg" + std::to_string(*piece.source)}));
        auto sr = ribs_on_segment(g, *piece.source);
        for (const auto& [r, where] : sr.pieces) out.push_back(rib_verdict(r));
        if (sr.localized_by_index)
            for (std::size_t n = 0; n < 4; ++n) out.push_back(rib_verdict(RibSpec::localized(nth_prime(n))));
    }
    return out;
}

// Element (1,1,1,...) of the Hahn product over the terminal Omega segment, as a generator.
PairSpec hahn_closure_pair(const GroupSpec& g, const std::string& name) {
    GroupSpec h = g;
    h.mode = Mode::Hahn;
    h.name = g.name.empty() ? "Hahn closure" : "Hahn closure of " + g.name;
    h.generators.push_back(Generator{name, {}, Coord(Rational(1))});
    return make_pair(g, h, g.name + " in its Hahn closure");
}

std::string fresh_generator_name(const GroupSpec& g) {
    std::string name = "one";
    auto taken = [&](const std::string& n) {
        return std::any_of(g.generators.begin(), g.generators.end(), [&](const Generator& x) { return x.name == n; });
    };
    while (taken(name)) name += "'";
    return name;
}

Json certificate(const PairSpec& p, const ImmediateCheck& c) {
    return Json{{"pair", p.name},
                {"from", to_json(c.approx.from)},
                {"tail", to_json(c.approx.tail)},
                {"best_so_far", to_json(p.G, c.approx.g_star)}};
}

// Step (3): maximality read off the presentation.
Verdict maximality(const GroupSpec& g) {
    Verdict v;
    if (g.spine.trivial() || g.mode == Mode::Hahn) {
        v.status = Status::StablyEmbedded;
        v.add("maximality", "a Hahn product is maximal");
        return v;
    }
    if (g.mode == Mode::Sum) {
        for (std::size_t s = 0; s < g.spine.segments.size(); ++s) {
            const Segment& seg = g.spine.segments[s];
            if (seg.kind == SegKind::Fin || seg.kind == SegKind::OmegaStar) continue;
            v.status = Status::NotStablyEmbedded;
            Json w{{"segment", s}, {"element", "the sum of the units at coordinates 0, 1, 2, ... of segment " + std::to_string(s)}};
            if (s == g.terminal_segment() && seg.kind == SegKind::Omega && in_domain(rib_at(g, Position::at(s, 0)), Coord(Rational(1)))) {
                PairSpec p = hahn_closure_pair(g, "one");
                ImmediateCheck c = immediate_ext_check(p, g_generator(p.H, p.H.generators.size() - 1), 0);
                if (c.status == Immediacy::NoMaximumDetected) w["certificate"] = certificate(p, c);
            }
            v.add("maximality",
                  "segment " + std::to_string(s) + " holds a copy of omega; (1,1,...) along it is a pseudo-limit outside the sum",
                  w);
            return v;
        }
        v.status = Status::StablyEmbedded;
        v.add("maximality", "every well-ordered subset of the spine is finite, so the sum is the Hahn product");
        return v;
    }
    // generators: look for the constant tail as an immediate extension
    const std::size_t t = g.terminal_segment();
    bool one_reachable = false;
    Integer d = 0;
    bool integral = true;
    for (const auto& gen : g.generators) {
        if (!gen.tail.standard() || !is_integer(gen.tail.fin)) integral = false;
        else d = gcd(d, gen.tail.fin.get_num());
    }
    one_reachable = !integral || d == 1;
    if (!one_reachable && in_domain(rib_at(g, Position::at(t, 0)), Coord(Rational(1)))) {
        PairSpec p = hahn_closure_pair(g, fresh_generator_name(g));
        ImmediateCheck c = immediate_ext_check(p, g_generator(p.H, p.H.generators.size() - 1), 0);
        if (c.status == Immediacy::NoMaximumDetected) {
            v.status = Status::NotStablyEmbedded;
            v.add("maximality", "the constant tail (1,1,...) has no best approximation in G", certificate(p, c));
            return v;
        }
    }
    v.status = Status::Unknown;
    v.add("hypothesis", "maximality of a presentation with generators is not decided by the rule table");
    return v;
}

struct Criteria {
    Verdict maximal;
    std::vector<Verdict> ribs;
    Verdict spine;
    bool frr = false;
};

Criteria criteria(const GroupSpec& g) {
    Criteria c;
    c.maximal = maximality(g);
    Quotient q = regular_spine(g);
    c.ribs = regular_rib_verdicts(g, q);
    c.frr = std::none_of(q.pieces.begin(), q.pieces.end(), [](const QuotientPiece& p) { return p.identity; });
    c.spine = chain_stably_embedded(q.chain);
    if (has_dense_codense(q.chain))
        c.spine.add("spine", "dense-codense colours on a complete dense segment: each colour class is dense, so no cut is "
                             "isolated by a colour and every cut is a point or a boundary");
    return c;
}

Verdict combine(const Criteria& c) {
    Verdict v;
    Tally all;
    all.note(c.maximal, false);
    for (const auto& r : c.ribs) all.note(r);
    all.note(c.spine, false);
    v.status = all.status(c.frr);
    auto take = [&](const Verdict& x) {
        for (const auto& r : x.reasons) v.reasons.push_back(r);
    };
    take(c.maximal);
    for (const auto& r : c.ribs) take(r);
    take(c.spine);
    return v;
}

}  // namespace

RegularRank regular_rank(const GroupSpec& g) {
    RegularRank rr;
    rr.spine = regular_spine(g);
    rr.finite = true;
    for (const auto& piece : rr.spine.pieces) {
        if (piece.identity) {
            rr.finite = false;
            rr.quotients.clear();
            return rr;
        }
        for (const auto& c : piece.classes) rr.quotients.push_back(c);
    }
    return rr;
}

Verdict classify_regular(const GroupSpec& g) {
    RegularRank rr = regular_rank(g);
    if (!rr.finite || rr.quotients.size() > 1)
        throw NotRegular("the regular spine has more than one class: " + describe(rr.spine.chain));
    if (rr.quotients.empty()) {
        Verdict v;
        v.status = Status::UniformlyStablyEmbedded;
        v.add("rib", "the trivial group");
        return v;
    }
    return class_verdict(rr.quotients.front());
}

Verdict classify_frr(const GroupSpec& g) {
    RegularRank rr = regular_rank(g);
    if (!rr.finite) throw NotFRR("infinitely many definable convex subgroups: " + describe(rr.spine.chain));
    Verdict v;
    Tally t;
    for (const auto& c : rr.quotients) {
        Verdict cv = class_verdict(c);
        t.note(cv);
        for (auto& r : cv.reasons) v.reasons.push_back(std::move(r));
    }
    v.status = t.status(true);
    v.add("spine", std::to_string(rr.subgroups()) + " definable convex subgroups; the quotient chain is finite");
    return v;
}

Verdict classify_main(const GroupSpec& g) {
    Verdict v;
    Check ur = check_UR(g);
    if (!ur.holds()) {
        for (const auto& r : ur.reasons) v.reasons.push_back(r);
        Verdict chain;
        try {
            chain = chain_stably_embedded(regular_spine(g).chain);
        } catch (const UnsupportedPresentation& e) {
            chain.status = Status::Unknown;
            chain.add("hypothesis", e.what());
        }
        if (chain.status == Status::NotStablyEmbedded) {
            v.status = Status::NotStablyEmbedded;
            for (auto r : chain.reasons) {
                r.detail = "a convex subgroup is not definable: " + r.detail;
                v.reasons.push_back(r);
            }
        } else {
            v.status = Status::Unknown;
            v.add("hypothesis", "(UR) fails and every convex-subgroup cut checked is definable");
        }
        return v;
    }
    Check m = check_M(g);
    if (!m.holds()) {
        v.status = Status::Unknown;
        for (const auto& r : m.reasons) v.reasons.push_back(r);
        v.add("hypothesis", "(M) fails: a spine value is a limit cut and the criterion does not apply");
        return v;
    }
    return combine(criteria(g));
}

Verdict all_cuts_definable(const GroupSpec& g) {
    Check ur = check_UR(g);
    if (!ur.holds()) throw HypothesisViolated("(UR) does not hold");
    Check m = check_M(g);
    if (!m.holds()) throw HypothesisViolated("(M) does not hold");
    Criteria c = criteria(g);
    Verdict v = combine(c);
    for (auto& r : v.reasons) {
        if (r.rule == "maximality" && c.maximal.status == Status::NotStablyEmbedded)
            r.detail = "the cut of a pseudo-limit has no maximum below it: " + r.detail;
        if (r.rule == "rib") r.detail = "rib cuts: " + r.detail;
        if (r.rule == "chain") r.detail = "spine cuts: " + r.detail;
    }
    v.reasons.insert(v.reasons.begin(),
                     Reason{"equivalence", "under (UR) and (M), stable embeddedness is equivalent to all cuts being definable", nullptr});
    if (v.status == Status::UniformlyStablyEmbedded) v.status = Status::StablyEmbedded;
    return v;
}

std::vector<std::int64_t> active_primes(const GroupSpec& g, std::int64_t bound) {
    std::vector<std::int64_t> out;
    const auto ribs = occurring_ribs(g);
    for (std::int64_t p = 2; p <= bound; ++p) {
        if (prime_index(p) < 0) continue;
        if (std::any_of(ribs.begin(), ribs.end(), [p](const RibSpec& r) { return !r.divisible_by(p); })) out.push_back(p);
    }
    return out;
}

namespace {

std::vector<Position> probe_positions(const GroupSpec& g) {
    std::vector<Position> out;
    if (g.spine.trivial()) return out;
    for (std::size_t s = 0; s < g.spine.segments.size(); ++s) {
        const Segment& seg = g.spine.segments[s];
        std::int64_t n = seg.kind == SegKind::Fin ? seg.size : 6;
        for (std::int64_t k = 0; k < n; ++k) out.push_back(Position::at(s, k));
        if (seg.kind != SegKind::Fin)
            for (const auto& [r, where] : ribs_on_segment(g, s).pieces)
                for (const auto& x : where.coords) out.push_back(Position::at(s, x));
    }
    return out;
}

bool same_spine(const PairSpec& p) {
    const ChainSpec& a = p.G.spine;
    const ChainSpec& b = p.H.spine;
    if (a.segments.size() != b.segments.size()) return false;
    for (std::size_t i = 0; i < a.segments.size(); ++i) {
        if (!(a.segments[i] == b.segments[i])) return false;
        if (!a.trivial() && (p.embedding[i].h_seg != i || p.embedding[i].offset != 0)) return false;
    }
    return describe(a) == describe(b);
}

bool all_finite(const ChainSpec& c) {
    return std::all_of(c.segments.begin(), c.segments.end(), [](const Segment& s) { return s.kind == SegKind::Fin; });
}

std::vector<GroupElement> h_only_candidates(const PairSpec& p) {
    std::vector<GroupElement> gens;
    for (std::size_t j = 0; j < p.H.generators.size(); ++j) {
        GroupElement h = g_generator(p.H, j);
        if (!to_G(p, h)) gens.push_back(h);
    }
    std::vector<GroupElement> out = gens;
    for (std::size_t i = 0; i < gens.size(); ++i)
        for (std::size_t j = i + 1; j < gens.size(); ++j) {
            out.push_back(g_add(p.H, gens[i], gens[j]));
            out.push_back(g_sub(p.H, gens[i], gens[j]));
        }
    return out;
}

}  // namespace

Check check_elementary_pair(const PairSpec& p) {
    Check c;
    validate(p);
    if (!same_spine(p)) {
        if (all_finite(p.G.spine) && all_finite(p.H.spine)) {
            c.status = CheckStatus::Fails;
            c.reasons.push_back({"spine", "finite spines of different shape are not elementarily equivalent",
                                 Json{{"G", describe(p.G.spine)}, {"H", describe(p.H.spine)}}});
        } else {
            c.status = CheckStatus::Unknown;
            c.reasons.push_back({"spine", "the spine embedding is not the identity; no rule decides its elementarity",
                                 Json{{"G", describe(p.G.spine)}, {"H", describe(p.H.spine)}}});
        }
        return c;
    }
    for (const auto& gp : probe_positions(p.G)) {
        RibSpec rg = rib_at(p.G, gp);
        RibSpec rh = rib_at(p.H, *embed(p, gp));
        if (!rib_elem_equiv(rg, rh)) {
            c.status = CheckStatus::Fails;
            c.reasons.push_back({"rib", "ribs " + rg.name() + " and " + rh.name() + " are not elementarily equivalent",
                                 Json{{"position", to_json(gp)}}});
            return c;
        }
    }
    // purity: nG = G cap nH on the probes
    std::vector<GroupElement> probes;
    for (const auto& gp : probe_positions(p.G))
        if (in_domain(rib_at(p.G, gp), Coord(Rational(1)))) probes.push_back(g_single(p.G, gp, Coord(Rational(1))));
    for (std::size_t j = 0; j < p.G.generators.size(); ++j) probes.push_back(g_generator(p.G, j));
    for (const auto& x : probes)
        for (std::int64_t n = 2; n <= 12; ++n) {
            bool in_g = g_in_mG(p.G, x, n).divisible;
            bool in_h = g_in_mG(p.H, to_H(p, x), n).divisible;
            if (in_g != in_h) {
                c.status = CheckStatus::Fails;
                c.reasons.push_back({"regular", "the embedding is not pure: divisibility by " + std::to_string(n) + " changes",
                                     Json{{"element", to_json(p.G, x)}, {"n", n}}});
                return c;
            }
        }
    c.status = CheckStatus::Holds;
    c.reasons.push_back({"elementary", "same spine, elementarily equivalent ribs at every probed position, pure embedding", nullptr});
    return c;
}

Verdict classify_pair(const PairSpec& p) {
    Check e = check_elementary_pair(p);
    if (!e.holds()) throw HypothesisViolated("the pair is not known to be elementary: " + e.reasons.front().detail);
    if (!check_UR(p.G).holds()) throw HypothesisViolated("(UR) does not hold in G");
    if (!check_M(p.G).holds()) throw HypothesisViolated("(M) does not hold in G");

    Verdict v;
    bool unknown = false;
    auto immediate_clause = [&](const std::string& clause, std::int64_t m) -> bool {
        for (const auto& h : h_only_candidates(p)) {
            ImmediateCheck c;
            try {
                c = immediate_ext_check(p, h, m);
            } catch (const UnsupportedPresentation&) {
                continue;  // G holds the whole tail
            }
            if (c.status != Immediacy::NoMaximumDetected) continue;
            Json w = certificate(p, c);
            w["element"] = to_json(p.H, h);
            if (m) w["m"] = m;
            v.status = Status::NotStablyEmbedded;
            v.add(clause,
                  m ? "val^" + std::to_string(m) + " of h - g has no maximum over G: G/" + std::to_string(m) +
                          "G is not pseudo-complete inside the extension"
                    : "h has no best approximation in G: an intermediate immediate extension exists",
                  w);
            return false;
        }
        return true;
    };
    if (!immediate_clause("maximality", 0)) return v;
    const auto primes = active_primes(p.G);
    for (std::int64_t n = 2; n <= 12; ++n) {
        auto f = prime_factors(n);
        if (std::none_of(f.begin(), f.end(), [&](std::int64_t q) { return std::count(primes.begin(), primes.end(), q); })) continue;
        if (!immediate_clause("maximality", n)) return v;
    }
    v.add("maximality", "no presented element of H outside G lacks a best approximation, for m = 0 and the active moduli");

    for (const auto& gp : probe_positions(p.G)) {
        RibSpec rg = rib_at(p.G, gp);
        RibSpec rh = rib_at(p.H, *embed(p, gp));
        if (rib_stably_embedded(rg).stably_embedded() || same_rib(rg, rh)) continue;
        v.status = Status::NotStablyEmbedded;
        v.add("rib", "rib " + rg.name() + " is not stably embedded in " + rh.name(), Json{{"position", to_json(gp)}});
        return v;
    }
    v.add("rib", "every rib pair is stably embedded");

    if (same_spine(p)) {
        v.add("spine", "the spine is unchanged");
    } else {
        Verdict s = chain_stably_embedded(regular_spine(p.G).chain);
        if (!s.stably_embedded()) unknown = true;
        for (const auto& r : s.reasons) v.reasons.push_back(r);
    }
    v.status = unknown ? Status::Unknown : Status::StablyEmbedded;
    return v;
}

}  // namespace oagkit
