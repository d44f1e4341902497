#include "support.hpp"

#include <doctest.h>

using namespace oagkit;
using namespace oagkit::testing;

namespace {

const char* const kCanonical[] = {
    "true",
    "false",
    "x > 0",
    "-x > 0",
    "2*x - 3*y > 0",
    "x + y + z > 0",
    "0 > 0",
    "x %2 0",
    "3*x - y %5 0",
    "x ===2 1",
    "x - a ===3 2",
    "x =** 1",
    "a - x =** -2",
    "val0(x) < inf",
    "val2(x) <= val2(y)",
    "val3(x - y) = val0(y)",
    "val0(x) != inf",
    "val2(x) > {\"pos\":{\"coord\":1,\"seg\":0}}",
    "val2(x) >= {\"limit\":{\"seg\":0}}",
    "colour[Qpts](val0(x))",
    "colour[P]({\"pos\":{\"coord\":2,\"seg\":0}})",
    "!x > 0",
    "!(x > 0 & y > 0)",
    "x > 0 & y > 0",
    "x > 0 | y > 0",
    "x > 0 & (y > 0 | z > 0)",
    "x > 0 & y > 0 | z > 0",
    "x > 0 | (y > 0 | z > 0)",
    "x > 0 & (y > 0 & z > 0)",
    "!!x =** 1 | val2(a - x) < {\"pos\":{\"coord\":3,\"seg\":0}} & x ===2 1",
};

GroupElement e(const GroupSpec& g, std::vector<std::pair<std::int64_t, long>> cs) {
    std::vector<std::pair<Position, Coord>> co;
    for (auto [p, c] : cs) co.emplace_back(Position::at(0, p), Coord(Rational(c)));
    return g_from_coords(g, co);
}

}  // namespace

TEST_SUITE("formula") {

TEST_CASE("print inverts parse on canonical formulas") {
    CHECK(std::size(kCanonical) == 30);
    for (const char* text : kCanonical) {
        INFO(std::string(text));
        Formula f = parse_formula(text);
        CHECK(print(f) == text);
        CHECK(print(parse_formula(print(f))) == print(f));
        CHECK(to_json(parse_formula(print(f))) == to_json(f));
    }
}

TEST_CASE("parse then print normalizes spacing and coefficients") {
    CHECK(print(parse_formula("  1*x+ 0*y -x+2*z>0")) == "2*z > 0");
    CHECK(print(parse_formula("x-x>0")) == "0 > 0");
    CHECK(print(parse_formula("(x>0)")) == "x > 0");
    CHECK(print(parse_formula("val2( x )< inf")) == "val2(x) < inf");
}

TEST_CASE("syntax errors carry positions") {
    for (const char* bad : {"", "x >", "x > 1", "val(x) < inf", "x ===2", "x %2 1", "(x > 0", "x > 0 &", "colour[](val0(x))", "x ===2 1 )"}) {
        INFO(std::string(bad));
        CHECK_THROWS_AS(parse_formula(bad), SyntaxError);
    }
    try {
        parse_formula("x > 0 & & y > 0");
        FAIL("no error");
    } catch (const SyntaxError& s) {
        CHECK(s.position == 8);
    }
}

TEST_CASE("free names") {
    auto names = free_names(parse_formula("val2(a - x) < val0(y) | 3*z =** 1"));
    CHECK(names == std::vector<std::string>{"a", "x", "y", "z"});
}

TEST_CASE("atoms delegate to the valuation module") {
    Rng rng(31);
    GroupSpec g = load("g1");
    auto pos = first_positions(g, 5);
    Formula gt = parse_formula("x - y > 0"), cong = parse_formula("x ===2 1"), eq = parse_formula("x =** 2"),
            div = parse_formula("x %3 0"), vc = parse_formula("val2(x) < val0(y)");
    for (int i = 0; i < 100; ++i) {
        GroupElement x = random_element(g, pos, 5, rng), y = random_element(g, pos, 5, rng);
        Env env{{"x", x}, {"y", y}};
        CHECK(eval(g, gt, env) == (g_compare(g, x, y) > 0));
        CHECK(eval(g, cong, env) == pred_cong_bullet(g, x, 2, 1));
        CHECK(eval(g, eq, env) == (!g_is_zero(g, x) && pred_eq_bullet(g, x, 2)));
        CHECK(eval(g, div, env) == g_in_mG(g, x, 3).divisible);
        CHECK(eval(g, vc, env) == (compare_values(g.spine, val_m(g, x, 2), nat_val(g, y)) < 0));
        CHECK(eval(g, parse_formula("!(x - y > 0) & x %3 0"), env) == (!eval(g, gt, env) && eval(g, div, env)));
    }
}

TEST_CASE("examples") {
    GroupSpec g = load("g1");
    Env env{{"a", e(g, {{0, 2}, {1, 3}})}, {"b", e(g, {{1, 1}})}};
    CHECK(eval(g, parse_formula("a ===2 1"), env));
    CHECK(eval(g, parse_formula("val2(a) > val2(b) | val2(a) = val2(b)"), env));
    CHECK(eval(g, parse_formula("val2(a) = {\"pos\":{\"coord\":1,\"seg\":0}}"), env));
    CHECK(eval(g, parse_formula("b =** 1"), env));
    CHECK_FALSE(eval(g, parse_formula("a - a =** 1"), env));
    CHECK(eval(g, parse_formula("2*a - 4*b %2 0"), env));
    CHECK(eval(g, parse_formula("a - a %0 0"), env));
    CHECK_THROWS_AS(eval(g, parse_formula("c > 0"), env), UnboundVariable);

    GroupSpec g2 = load("g2");
    Env env2{{"r", g_single(g2, Position::at(0, make_rational(1, 2)), Coord(Rational(1)))},
             {"s", g_single(g2, Position::at(0, Rational(mpq_class("3/7"))), Coord(Rational(1)))}};
    CHECK(eval(g2, parse_formula("colour[Qpts](val0(r))"), env2));
    CHECK(eval(g2, parse_formula("val0(r) > val0(s)"), env2));
}

TEST_CASE("values are read in H over a pair") {
    PairSpec p = load_pair("z2_in_zstar_z");
    GroupElement x = g_single(p.G, Position::at(0, 1), Coord(Rational(1)));
    Env env{{"x", x}};
    SpineValue v = embed_value(p, nat_val(p.G, x));
    Formula f = Formula::val_cmp(SpineTerm{false, 0, Term::var("x"), {}}, CmpOp::Eq, SpineTerm{true, 0, {}, v});
    CHECK(eval(p.G, f, env, &p));
}

}
