#include "support.hpp"

#include <doctest.h>

using namespace oagkit;
using namespace oagkit::testing;

namespace {

GroupSpec sum_zstar() {
    return group_from_json(Json::parse(R"({"spine":{"segments":[{"kind":"Omega"}]},"ribs":[{"on":"all","rib":"Z*"}],"mode":"sum"})"));
}

std::vector<GroupSpec> oracle_groups() {
    return {load("g1"), load("g1sum"), load("z3"), load("gamma_p"), load("zr"), load("zq"), sum_zstar()};
}

bool discrete_at(const GroupSpec& g, const Position& p) { return rib_at(g, p).discrete; }

// truncation of a at the positions <= gamma, minus k e_gamma, lies in m times the truncated group
bool brute_cong_bullet(const GroupSpec& g, const GroupElement& a, std::int64_t m, std::int64_t k, const std::vector<Position>& pos) {
    SpineValue v = brute_val_m(g, a, m, pos);
    if (v.kind != SpineValue::Pos || !discrete_at(g, v.pos)) return false;
    for (const auto& p : pos) {
        Coord c = coordinate(g, a, p);
        if (p == v.pos) c -= Coord(Rational(static_cast<long>(k)));
        if (!rib_has_mth_part(rib_at(g, p), c, m)) return false;
        if (p == v.pos) return true;
    }
    return false;
}

bool brute_eq_bullet(const GroupSpec& g, const GroupElement& a, std::int64_t k, const std::vector<Position>& pos) {
    for (const auto& p : pos) {
        Coord c = coordinate(g, a, p);
        if (c.is_zero()) continue;
        return discrete_at(g, p) && c == Coord(Rational(static_cast<long>(k)));
    }
    return false;
}

}  // namespace

TEST_SUITE("valuation") {

TEST_CASE("val_m agrees with the definition by enumeration") {
    Rng rng(2024);
    for (const GroupSpec& g : oracle_groups()) {
        auto pos = first_positions(g, 6);
        for (int i = 0; i < 40; ++i) {
            GroupElement a = random_element(g, pos, 8, rng);
            for (std::int64_t m : {0, 2, 3, 4}) {
                INFO(g.name, " a=", to_json(g, a).dump(), " m=", m);
                CHECK(same_value(g.spine, val_m(g, a, m), brute_val_m(g, a, m, pos)));
            }
        }
    }
}

TEST_CASE("ultrametric inequality, symmetry and invariance under mG") {
    Rng rng(99);
    for (const GroupSpec& g : oracle_groups()) {
        auto pos = first_positions(g, 6);
        for (int i = 0; i < 40; ++i) {
            GroupElement a = random_element(g, pos, 8, rng), b = random_element(g, pos, 8, rng), c = random_element(g, pos, 4, rng);
            for (std::int64_t m : {0, 2, 3, 4}) {
                SpineValue va = val_m(g, a, m), vb = val_m(g, b, m);
                INFO(g.name, " a=", to_json(g, a).dump(), " b=", to_json(g, b).dump(), " m=", m);
                CHECK(compare_values(g.spine, val_m(g, g_add(g, a, b), m), min_value(g.spine, va, vb)) >= 0);
                CHECK(same_value(g.spine, val_m(g, g_neg(g, a), m), va));
                if (m >= 2) {
                    CHECK(same_value(g.spine, val_m(g, g_add_scaled(g, a, c, m), m), va));
                    CHECK(val_m(g, g_scale(g, c, m), m).is_inf());
                    CHECK(va.is_inf() == g_in_mG(g, a, m).divisible);
                }
            }
        }
    }
}

TEST_CASE("natural valuation of zero and val^1") {
    GroupSpec g = load("g1");
    CHECK(nat_val(g, g_zero(g)).is_inf());
    CHECK(val_m(g, g_single(g, Position::at(0, 4), Coord(Rational(7))), 1).is_inf());
}

TEST_CASE("spines of Gamma^p are a single point and infinity") {
    GroupSpec g = load("gamma_p");
    const std::int64_t primes[] = {2, 3, 5};
    for (std::int64_t i = 0; i < 3; ++i) {
        ValueSet s = spine_m(g, primes[i]);
        for (std::int64_t j = 0; j < 3; ++j) CHECK(s.contains(SpineValue::at(Position::at(0, j))) == (i == j));
        CHECK(s.limits.empty());
        CHECK(s.contains(SpineValue::infinity()));
    }
    CHECK(spine_m(g, 7).members.front().kind == RuleKind::None);
}

TEST_CASE("G_4: the 2-spine is omega+1 and val^2(a) is the limit cut") {
    GroupSpec g = load("g4");
    ValueSet s = spine_m(g, 2);
    CHECK(s.limits == std::vector<std::size_t>{0});
    CHECK(s.contains(SpineValue::at(Position::at(0, 12))));
    GroupElement a = g_generator(g, 0);
    SpineValue v = val_m(g, a, 2);
    CHECK(v.kind == SpineValue::Limit);
    CHECK(v.seg == 0);
    CHECK(same_value(g.spine, val_m(g, a, 3), SpineValue::at(Position::at(0, 0))));
    CHECK(same_value(g.spine, val_m(g, a, 0), SpineValue::at(Position::at(0, 0))));
    // a - 2 e_0 - 2 e_1 is still not 2-divisible, and its natural value moves up
    GroupElement b = g_sub(g, a, g_from_coords(g, {{Position::at(0, 0), Coord(Rational(2))}, {Position::at(0, 1), Coord(Rational(2))}}));
    CHECK(val_m(g, b, 2).kind == SpineValue::Limit);
    CHECK(same_value(g.spine, nat_val(g, b), SpineValue::at(Position::at(0, 2))));
}

TEST_CASE("t-spine classes agree with separation by spine points") {
    for (const char* name : {"g1", "z3", "zr", "gamma_p", "zq", "g4"}) {
        GroupSpec g = load(name);
        auto pos = first_positions(g, 6);
        for (std::int64_t m : {2, 3, 4}) {
            ValueSet s = spine_m(g, m);
            for (std::size_t i = 0; i < pos.size(); ++i)
                for (std::size_t j = i; j < pos.size(); ++j) {
                    bool separated = false;
                    for (std::size_t k = i; k < j; ++k) separated = separated || s.contains(SpineValue::at(pos[k]));
                    INFO(name, " m=", m, " ", i, " ", j);
                    CHECK(same_class(g, t_project(g, s, pos[i]), t_project(g, s, pos[j])) == !separated);
                }
        }
    }
}

TEST_CASE("t-spine and regular spine examples") {
    auto fin = [](const char* ribs) {
        return group_from_json(Json::parse(std::string(R"({"spine":{"segments":[{"kind":"Fin","size":)") +
                                           std::to_string(Json::parse(ribs).size()) + R"(}]},"ribs":)" + ribs + R"(,"mode":"hahn"})"));
    };
    auto classes = [](const Quotient& q) {
        std::size_t n = 0;
        for (const auto& p : q.pieces) n += p.classes.size();
        return n;
    };
    Quotient id = t_spine(load("g1"), 2);
    REQUIRE(id.pieces.size() == 1);
    CHECK(id.pieces[0].identity);
    // Gamma^2 = {pos2}: nothing of Gamma^2 lies in [0,2), so the three positions form one class
    GroupSpec qqz = fin(R"([{"on":{"pos":{"seg":0,"coord":0}},"rib":"Q"},{"on":{"pos":{"seg":0,"coord":1}},"rib":"Q"},{"on":{"pos":{"seg":0,"coord":2}},"rib":"Z"}])");
    CHECK(classes(t_spine(qqz, 2)) == 1);
    GroupSpec qz = fin(R"([{"on":{"pos":{"seg":0,"coord":0}},"rib":"Q"},{"on":{"pos":{"seg":0,"coord":1}},"rib":"Z"}])");
    CHECK(classes(regular_spine(qz)) == 1);
    CHECK(regular_spine(load("g1")).pieces.front().identity);
    CHECK(classes(regular_spine(load("zr"))) == 2);
}

TEST_CASE("bullet predicates agree with truncation") {
    Rng rng(7);
    for (const char* name : {"g1", "z3", "zr", "gamma_p", "zq"}) {
        GroupSpec g = load(name);
        auto pos = first_positions(g, 5);
        for (int i = 0; i < 60; ++i) {
            GroupElement a = random_element(g, pos, 6, rng);
            for (std::int64_t m : {2, 3, 4})
                for (std::int64_t k = 1; k < m; ++k) {
                    INFO(name, " a=", to_json(g, a).dump(), " m=", m, " k=", k);
                    CHECK(pred_cong_bullet(g, a, m, k) == brute_cong_bullet(g, a, m, k, pos));
                }
            if (g_is_zero(g, a)) continue;
            for (std::int64_t k : {-3, -1, 1, 2, 5}) CHECK(pred_eq_bullet(g, a, k) == brute_eq_bullet(g, a, k, pos));
        }
    }
}

TEST_CASE("bullet predicate examples") {
    GroupSpec g = load("g1");
    auto at = [&](std::vector<std::pair<std::int64_t, long>> cs) {
        std::vector<std::pair<Position, Coord>> co;
        for (auto [p, c] : cs) co.emplace_back(Position::at(0, p), Coord(Rational(c)));
        return g_from_coords(g, co);
    };
    CHECK(pred_eq_bullet(g, at({{1, 3}}), 3));
    CHECK(pred_eq_bullet(g, at({{0, 1}, {1, 5}}), 1));
    CHECK_FALSE(pred_eq_bullet(g, at({{0, 1}, {1, 5}}), 2));
    CHECK(pred_cong_bullet(g, at({{0, 2}, {1, 3}}), 2, 1));
    CHECK_FALSE(pred_cong_bullet(g, at({{0, 2}, {1, 4}}), 2, 1));
    CHECK_FALSE(pred_eq_bullet(load("q"), g_single(load("q"), Position::at(0, 0), Coord(Rational(1))), 1));
    GroupSpec g4 = load("g4");
    CHECK_FALSE(pred_cong_bullet(g4, g_generator(g4, 0), 2, 1));
}

TEST_CASE("property (M) and (UR)") {
    CHECK(check_M(load("g1")).status == CheckStatus::Holds);
    CHECK(check_M(load("g1sum")).status == CheckStatus::Holds);
    Check m4 = check_M(load("g4"));
    CHECK(m4.status == CheckStatus::Fails);
    CHECK(m4.n == 2);
    CHECK(check_UR(load("g1")).holds());
    CHECK(check_UR(load("g3")).status == CheckStatus::Fails);
    Check ur = check_UR(load("gamma_p"));
    CHECK(ur.holds());
    CHECK(ur.n == 30);
}

}
