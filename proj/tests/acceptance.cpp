// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include "support.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <numeric>

using namespace oagkit;
using namespace oagkit::testing;

namespace {

struct Failure {
    std::string what;
};

void expect(bool ok, const std::string& what) {
    if (!ok) throw Failure{what};
}

bool has_reason(const Verdict& v, const std::string& rule, const std::string& fragment) {
    return std::any_of(v.reasons.begin(), v.reasons.end(),
                       [&](const Reason& r) { return r.rule == rule && r.detail.find(fragment) != std::string::npos; });
}

GroupElement units(const GroupSpec& g, std::int64_t from, std::int64_t to) {
    std::vector<std::pair<Position, Coord>> co;
    for (std::int64_t i = from; i < to; ++i) co.emplace_back(Position::at(0, i), Coord(Rational(1)));
    return g_from_coords(g, co);
}

void gamma_p() {
    GroupSpec g = load("gamma_p");
    const std::int64_t primes[] = {2, 3, 5};
    for (std::int64_t i = 0; i < 3; ++i) {
        ValueSet s = spine_m(g, primes[i]);
        std::string want = "{seg0:" + std::to_string(i) + "} ∪ {∞}";
        expect(describe(s) == want, "spine_" + std::to_string(primes[i]) + " = " + describe(s));
        for (std::int64_t j = 0; j < 3; ++j)
            expect(s.contains(SpineValue::at(Position::at(0, j))) == (i == j), "membership of position " + std::to_string(j));
        expect(s.contains(SpineValue::infinity()), "infinity missing");
    }
}

void g1() {
    expect(classify_main(load("g1")).status == Status::StablyEmbedded, "Hahn product");
    Verdict sum = classify_main(load("g1sum"));
    expect(sum.status == Status::NotStablyEmbedded, "sum status");
    expect(!sum.reasons.empty() && sum.reasons.front().rule == "maximality" && !sum.reasons.front().witness.is_null(),
           "sum has no maximality witness");
}

void g2() {
    Verdict v = classify_main(load("g2"));
    expect(v.status == Status::StablyEmbedded, "status");
    expect(has_reason(v, "rib", "Z is Z"), "no rib check for Z");
    expect(has_reason(v, "rib", "R is archimedean"), "no rib check for R");
    expect(has_reason(v, "spine", "dense-codense"), "no dense-codense spine rule");
}

void g3() {
    Verdict v = classify_main(load("g3"));
    expect(v.status == Status::NotStablyEmbedded, "status");
    bool boundary = std::any_of(v.reasons.begin(), v.reasons.end(), [](const Reason& r) {
        return r.witness.is_object() && r.witness.value("kind", "") == "SegmentBoundary" && r.witness.value("seg", -1) == 0;
    });
    expect(boundary, "no SegmentBoundary witness between omega and omega*");
}

void g4() {
    GroupSpec g = load("g4");
    ValueSet s = spine_m(g, 2);
    expect(describe(s) == "seg0 ∪ {lim seg0} ∪ {∞}", "spine_2 = " + describe(s));
    SpineValue v = val_m(g, g_generator(g, 0), 2);
    expect(v.kind == SpineValue::Limit && v.seg == 0, "val^2(a) = " + describe(v));
    expect(check_M(g).status == CheckStatus::Fails, "(M) does not fail");
    expect(classify_main(g).status == Status::Unknown, "classification is not Unknown");
}

void frr() {
    for (const char* name : {"z", "z2", "z3", "z2r"})
        expect(classify_frr(load(name)).status == Status::UniformlyStablyEmbedded, name);
    expect(classify_frr(load("zq")).status == Status::NotStablyEmbedded, "zq");
}

void chains() {
    ChainSpec dense = ChainSpec::of({Segment::dense_complete()});
    SegmentRule q;
    q.seg = 0;
    q.kind = RuleKind::DenseCodense;
    dense.colours.push_back({"Q", {q}, false});
    for (const auto& c : {ChainSpec::of({Segment::omega()}), ChainSpec::of({Segment::omega_star()}),
                          ChainSpec::of({Segment::integers()}), dense})
        expect(chain_stably_embedded(c).status == Status::StablyEmbedded, describe(c));
    ChainSpec gap = ChainSpec::of({Segment::omega(), Segment::omega_star()});
    expect(chain_stably_embedded(gap).status == Status::NotStablyEmbedded, describe(gap));
    SegmentRule p;
    p.seg = 0;
    p.kind = RuleKind::All;
    gap.colours.push_back({"P", {p}, false});
    expect(chain_stably_embedded(gap).status == Status::StablyEmbedded, describe(gap) + " with P");
}

void valuation_oracle() {
    Rng rng(8);
    const GroupSpec groups[] = {load("g1"), load("g1sum")};
    for (int i = 0; i < 200; ++i) {
        const GroupSpec& g = groups[i % 2];
        auto pos = first_positions(g, 6);
        GroupElement a = random_element(g, pos, 8, rng), b = random_element(g, pos, 8, rng), c = random_element(g, pos, 8, rng);
        std::string where = g.name + " a=" + to_json(g, a).dump();
        for (std::int64_t m : {0, 2, 3, 4}) {
            SpineValue va = val_m(g, a, m);
            expect(same_value(g.spine, va, brute_val_m(g, a, m, pos)), where + " m=" + std::to_string(m));
            expect(compare_values(g.spine, val_m(g, g_add(g, a, b), m), min_value(g.spine, va, val_m(g, b, m))) >= 0,
                   "ultrametric " + where);
            expect(same_value(g.spine, val_m(g, g_neg(g, a), m), va), "symmetry " + where);
            for (std::int64_t n : {-5, -1, 5, 7})
                if (m == 0 || std::gcd(n, m) == 1)
                    expect(same_value(g.spine, val_m(g, g_scale(g, a, n), m), va), "invariance under " + std::to_string(n) + " " + where);
            if (m >= 2) expect(same_value(g.spine, val_m(g, g_add_scaled(g, a, c, m), m), va), "mG invariance " + where);
        }
        expect(nat_val(g, g_sub(g, a, a)).is_inf(), "val(0)");
    }
}

void lifting() {
    Rng rng(9);
    GroupSpec g = load("g1");
    auto noise = first_positions(g, 10);
    for (int trial = 0; trial < 20; ++trial) {
        PseudoSequence s;
        s.modulus = 2;
        GroupElement a = random_element(g, noise, 5, rng);
        std::int64_t p = rng.uniform(0, 1);
        for (int i = 0; i < 6; ++i) {
            s.terms.push_back(a);
            a = g_add(g, a, g_single(g, Position::at(0, p), Coord(Rational(static_cast<long>(2 * rng.uniform(-3, 3) + 1)))));
            a = g_add_scaled(g, a, random_element(g, noise, 4, rng, 0.3), 2);
            p += rng.uniform(1, 2);
        }
        expect(is_pseudo_cauchy(g, s).pseudo_cauchy, "generated prefix is not pseudo-Cauchy");
        PseudoSequence l = lift_mod_m(g, s);
        expect(l.terms.size() == s.terms.size(), "length");
        for (std::size_t i = 0; i < s.terms.size(); ++i) {
            expect(g_in_mG(g, g_sub(g, l.terms[i], s.terms[i]), 2).divisible, "congruence at " + std::to_string(i));
            for (std::size_t j = i + 1; j < s.terms.size(); ++j)
                expect(same_value(g.spine, nat_val(g, g_sub(g, l.terms[i], l.terms[j])), val_m(g, g_sub(g, s.terms[i], s.terms[j]), 2)),
                       "values at " + std::to_string(i) + "," + std::to_string(j));
        }
    }
}

bool finite_spine(const GroupSpec& g) {
    return std::all_of(g.spine.segments.begin(), g.spine.segments.end(), [](const Segment& s) { return s.kind == SegKind::Fin; });
}

bool truth_in_H(const PairSpec& p, const GroupElement& a, const SchemeTarget& t, const GroupElement& g) {
    GroupElement h = g_sub(p.H, g_scale(p.H, a, t.n), to_H(p, g));
    switch (t.kind) {
        case SchemeTarget::Sign: return g_compare(p.H, h, g_zero(p.H)) > 0;
        case SchemeTarget::CongBullet: return pred_cong_bullet(p.H, h, t.m, t.k);
        case SchemeTarget::EqBullet: return !g_is_zero(p.H, h) && pred_eq_bullet(p.H, h, t.k);
    }
    return false;
}

void schemes() {
    const char* pairs[] = {"g1_identity", "g2_identity", "gamma_p_identity", "zr_identity", "z_in_zstar",
                           "z2_in_z_zstar", "z2_in_zstar_z", "z3_in_z_zstar_z", "mod2", "sum_in_hahn"};
    const std::vector<SchemeTarget> all{{SchemeTarget::Sign, 1, 0, 0},       {SchemeTarget::Sign, 2, 0, 0},
                                        {SchemeTarget::Sign, -1, 0, 0},      {SchemeTarget::CongBullet, 1, 2, 1},
                                        {SchemeTarget::CongBullet, 2, 3, 2}, {SchemeTarget::EqBullet, 1, 0, 1},
                                        {SchemeTarget::EqBullet, 1, 0, -1}};
    const std::vector<SchemeTarget> one_per_kind{all[0], all[3], all[5]};
    for (const char* name : pairs) {
        PairSpec p = load_pair(name);
        GroupElement a = pair_a(p, name);
        auto pos = first_positions(p.G, 5);
        for (const auto& t : finite_spine(p.G) ? all : one_per_kind) {
            std::string where = std::string(name) + " " + describe(t);
            std::optional<ImmediateCheck> ic;
            try {
                ic = immediate_ext_check(p, g_scale(p.H, a, t.n), t.kind == SchemeTarget::CongBullet ? t.m : 0);
            } catch (const ElementInG&) {
            }
            bool detected = ic && ic->status == Immediacy::NoMaximumDetected;
            std::optional<DefiningScheme> s;
            try {
                s = make_scheme(p, a, t);
            } catch (const NoMaximum& e) {
                expect(detected, where + ": NoMaximum without an immediate-extension witness");
                expect(e.certificate.from == ic->approx.from && e.certificate.tail == ic->approx.tail, where + ": certificates differ");
                continue;
            }
            expect(!detected, where + ": immediate-extension witness but a scheme was built");
            expect(parameters_in_G(p, *s), where + ": parameters outside G");
            for_each_grid_element(p.G, pos, 4, [&](const GroupElement& g) {
                if (scheme_eval(p, *s, g) != truth_in_H(p, a, t, g)) throw Failure{where + ": scheme disagrees at " + to_json(p.G, g).dump()};
                GroupElement h = g_sub(p.H, g_scale(p.H, a, t.n), to_H(p, g));
                if (!same_value(p.H.spine, decompose_val(p, s->best, g), val_m(p.H, h, s->best.m)))
                    throw Failure{where + ": decomposition fails at " + to_json(p.G, g).dump()};
            });
        }
    }
}

void mod2() {
    PairSpec p = load_pair("mod2");
    GroupElement h = pair_a(p, "mod2");
    ImmediateCheck c = immediate_ext_check(p, h);
    expect(c.status == Immediacy::NotImmediate, "h is not NotImmediate");
    expect(same_value(p.H.spine, c.witness, SpineValue::at(Position::at(0, 0))), "val(h - g) max is " + describe(c.witness));

    // (1,...,1,0,...) with n ones
    const std::size_t len = 10;
    PseudoSequence s;
    s.modulus = 2;
    for (std::size_t n = 1; n <= len; ++n) s.terms.push_back(units(p.G, 0, static_cast<std::int64_t>(n)));
    expect(is_pseudo_cauchy(p.G, s).pseudo_cauchy, "not pseudo-Cauchy");
    for (std::size_t n = 0; n < len; ++n)
        expect(same_value(p.H.spine, val_m(p.H, g_sub(p.H, h, to_H(p, s.terms[n])), 2),
                          SpineValue::at(Position::at(0, static_cast<std::int64_t>(n + 1)))),
               "h + 2H is not the val^2 pseudo-limit");

    PseudoSequence l = lift_mod_m(p.G, s);
    auto pos = first_positions(p.G, 6);
    bool limit_in_G = false;
    for_each_grid_element(p.G, pos, 2, [&](const GroupElement& g) { limit_in_G = limit_in_G || is_pseudo_limit(p.G, l, g); });
    expect(!limit_in_G, "a finitely supported pseudo-limit of the lift");

    GroupSpec closure = group_from_json(Json::parse(R"({"spine":{"segments":[{"kind":"Omega"}]},"ribs":[{"on":"all","rib":"Z"}],"mode":"hahn"})"));
    PseudoSequence r;
    r.modulus = 2;
    SequenceRule rule;
    rule.cycle = {Coord(Rational(1))};
    r.rule = rule;
    r = with_rule_terms(closure, r, len);
    HahnLimit hl = hahn_pseudo_limit(closure, r);
    expect(hl.representable && hl.presentation.generators.size() == 1, "the limit does not need a new generator");

    Verdict v = classify_pair(p);
    expect(v.status == Status::NotStablyEmbedded, "pair status");
    expect(!v.reasons.empty() && v.reasons.back().rule == "maximality" && v.reasons.back().witness.value("m", 0) == 2,
           "not rejected by the mod-2 maximality clause");
}

}  // namespace

int main() {
    const std::pair<const char*, std::function<void()>> criteria[] = {
        {"Gamma^p spines", gamma_p},
        {"G1 classification", g1},
        {"G2 classification", g2},
        {"G3 classification", g3},
        {"G4 behaviour", g4},
        {"FRR table", frr},
        {"chain suite", chains},
        {"valuation oracle", valuation_oracle},
        {"lifting", lifting},
        {"defining schemes", schemes},
        {"mod-2 pair", mod2},
    };
    int failed = 0, index = 0;
    for (const auto& [name, run] : criteria) {
        ++index;
        auto t0 = std::chrono::steady_clock::now();
        std::string detail;
        try {
            run();
        } catch (const Failure& f) {
            detail = f.what;
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("%-4s %2d %-20s %6.2fs%s%s\n", detail.empty() ? "PASS" : "FAIL", index, name, s, detail.empty() ? "" : "  ",
                    detail.c_str());
        if (!detail.empty()) ++failed;
    }
    return failed ? 1 : 0;
}
