#include "support.hpp"

#include <doctest.h>

using namespace oagkit;
using namespace oagkit::testing;

namespace {

const char* const kPairs[] = {"g1_identity", "g2_identity", "gamma_p_identity", "zr_identity", "z_in_zstar",
                              "z2_in_z_zstar", "z2_in_zstar_z", "z3_in_z_zstar_z", "mod2", "sum_in_hahn"};

std::vector<SchemeTarget> targets() {
    return {{SchemeTarget::Sign, 1, 0, 0},       {SchemeTarget::Sign, 2, 0, 0},     {SchemeTarget::Sign, -1, 0, 0},
            {SchemeTarget::CongBullet, 1, 2, 1}, {SchemeTarget::CongBullet, 2, 3, 2}, {SchemeTarget::EqBullet, 1, 0, 1},
            {SchemeTarget::EqBullet, 1, 0, -1}};
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

bool expect_no_maximum(const std::string& pair, const SchemeTarget& t) {
    return pair == "sum_in_hahn" || (pair == "mod2" && t.kind == SchemeTarget::CongBullet);
}

}  // namespace

TEST_SUITE("typedef") {

TEST_CASE("defining schemes agree with truth in H on a coefficient grid") {
    for (const char* name : kPairs) {
        PairSpec p = load_pair(name);
        GroupElement a = pair_a(p, name);
        auto pos = first_positions(p.G, 4);
        for (const auto& t : targets()) {
            INFO(name, " ", describe(t));
            if (expect_no_maximum(name, t)) {
                CHECK_THROWS_AS(make_scheme(p, a, t), NoMaximum);
                continue;
            }
            DefiningScheme s = make_scheme(p, a, t);
            CHECK(parameters_in_G(p, s));
            long mismatches = 0, decompose = 0;
            for_each_grid_element(p.G, pos, 2, [&](const GroupElement& g) {
                if (scheme_eval(p, s, g) != truth_in_H(p, a, t, g)) ++mismatches;
                GroupElement h = g_sub(p.H, g_scale(p.H, a, t.n), to_H(p, g));
                if (!same_value(p.H.spine, decompose_val(p, s.best, g), val_m(p.H, h, s.best.m))) ++decompose;
            });
            CHECK(mismatches == 0);
            CHECK(decompose == 0);
        }
    }
}

TEST_CASE("best approximation certificates") {
    PairSpec sum = load_pair("sum_in_hahn");
    BestApproximation c = best_approx(sum, pair_a(sum, "sum_in_hahn"), 1, 0);
    CHECK(c.no_maximum);
    CHECK(c.tail == Coord(Rational(1)));
    try {
        scheme_sign(sum, pair_a(sum, "sum_in_hahn"), 1);
        FAIL("no certificate");
    } catch (const NoMaximum& e) {
        CHECK(e.certificate.no_maximum);
    }

    PairSpec mod2 = load_pair("mod2");
    BestApproximation b = best_approx(mod2, pair_a(mod2, "mod2"), 1, 0);
    CHECK_FALSE(b.no_maximum);
    CHECK(same_value(mod2.H.spine, b.beta, SpineValue::at(Position::at(0, 0))));
    CHECK(best_approx(mod2, pair_a(mod2, "mod2"), 1, 2).no_maximum);
}

TEST_CASE("combinations of a tuple") {
    PairSpec p = load_pair("z2_in_z_zstar");
    GroupElement a = pair_a(p, "z2_in_z_zstar");
    GroupElement b = to_H(p, g_single(p.G, Position::at(0, 0), Coord(Rational(1))));
    auto cs = combination_schemes(p, {a, b}, {SchemeTarget::Sign, 1, 0, 0}, 1);
    CHECK(cs.size() == 9);
    for (const auto& c : cs) {
        bool zero = std::all_of(c.z.begin(), c.z.end(), [](std::int64_t z) { return z == 0; });
        if (!zero) CHECK(c.scheme.has_value());
        if (c.scheme) CHECK(parameters_in_G(p, *c.scheme));
    }
}

TEST_CASE("scheme json names its cases") {
    PairSpec p = load_pair("z_in_zstar");
    DefiningScheme s = scheme_sign(p, pair_a(p, "z_in_zstar"), 1);
    Json j = to_json(p, s);
    CHECK(j.contains("cases"));
    CHECK(j["cases"].size() == s.cases.size());
}

}
