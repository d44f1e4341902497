#include "support.hpp"

#include <doctest.h>

using namespace oagkit;
using namespace oagkit::testing;

TEST_SUITE("group") {

TEST_CASE("ordered group axioms on random elements") {
    Rng rng(11);
    for (const char* name : {"g1", "g1sum", "z3", "gamma_p", "zr"}) {
        GroupSpec g = load(name);
        auto pos = first_positions(g, 6);
        for (int i = 0; i < 60; ++i) {
            GroupElement a = random_element(g, pos, 8, rng), b = random_element(g, pos, 8, rng), c = random_element(g, pos, 8, rng);
            INFO(name, " a=", to_json(g, a).dump(), " b=", to_json(g, b).dump());
            CHECK(g_equal(g, g_add(g, a, b), g_add(g, b, a)));
            CHECK(g_equal(g, g_add(g, g_add(g, a, b), c), g_add(g, a, g_add(g, b, c))));
            CHECK(g_is_zero(g, g_add(g, a, g_neg(g, a))));
            CHECK(g_equal(g, g_sub(g, a, b), g_add_scaled(g, a, b, -1)));
            CHECK(g_equal(g, g_scale(g, a, 3), g_add(g, a, g_add(g, a, a))));
            auto ab = g_compare(g, a, b);
            CHECK(g_compare(g, g_add(g, a, c), g_add(g, b, c)) == ab);
            CHECK(g_compare(g, b, a) == (0 <=> ab));
        }
    }
}

TEST_CASE("comparison is lexicographic in the coordinates") {
    GroupSpec g = load("g1");
    GroupElement a = g_from_coords(g, {{Position::at(0, 0), Coord(Rational(1))}, {Position::at(0, 1), Coord(Rational(-100))}});
    GroupElement b = g_from_coords(g, {{Position::at(0, 1), Coord(Rational(100))}});
    CHECK(g_compare(g, a, b) > 0);
    CHECK(g_compare(g, b, g_zero(g)) > 0);
}

TEST_CASE("generator elements") {
    GroupSpec g = load("g4");
    GroupElement a = g_generator(g, 0);
    CHECK(coordinate(g, a, Position::at(0, 17)) == Coord(Rational(2)));
    CHECK(tail_value(g, a) == Coord(Rational(2)));
    // a - 2 e_0 still has the constant tail 2 beyond the first coordinate
    GroupElement b = g_sub(g, a, g_single(g, Position::at(0, 0), Coord(Rational(2))));
    CHECK(coordinate(g, b, Position::at(0, 0)).is_zero());
    CHECK(g_compare(g, b, g_zero(g)) > 0);
    CHECK(horizon(g, b) == 1);
}

TEST_CASE("membership in mG carries a witness") {
    Rng rng(5);
    for (const char* name : {"g1", "z3", "gamma_p", "zq"}) {
        GroupSpec g = load(name);
        auto pos = first_positions(g, 5);
        for (int i = 0; i < 50; ++i) {
            GroupElement a = random_element(g, pos, 8, rng);
            for (std::int64_t m : {2, 3, 5}) {
                Divisibility d = g_in_mG(g, a, m);
                bool brute = true;
                for (const auto& p : pos) brute = brute && rib_has_mth_part(rib_at(g, p), coordinate(g, a, p), m);
                CHECK(d.divisible == brute);
                if (d.witness) CHECK(g_equal(g, g_scale(g, *d.witness, m), a));
            }
        }
    }
}

TEST_CASE("skeleton of G_2") {
    Skeleton s = skeleton(load("g2"));
    REQUIRE(s.ribs.size() == 1);
    CHECK(s.chain.segments.front().kind == SegKind::DenseComplete);
    CHECK(s.ribs[0].pieces.size() == 2);
}

TEST_CASE("json round trip of elements") {
    Rng rng(3);
    GroupSpec g = load("mod2_h");
    auto pos = first_positions(g, 4);
    for (int i = 0; i < 20; ++i) {
        GroupElement a = random_element(g, pos, 5, rng);
        a.gens[0] = rng.uniform(-2, 2);
        GroupElement b = element_from_json(g, to_json(g, a));
        CHECK(g_equal(g, a, b));
        CHECK(to_json(g, a) == to_json(g, b));
    }
}

}
