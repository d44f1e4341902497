#include "support.hpp"

#include <doctest.h>

using namespace oagkit;
using namespace oagkit::testing;

TEST_SUITE("rib") {

TEST_CASE("archimedean ribs") {
    CHECK(rib_stably_embedded(RibSpec::integers()).status == Status::StablyEmbedded);
    CHECK(rib_stably_embedded(RibSpec::reals()).status == Status::StablyEmbedded);
    CHECK(rib_stably_embedded(RibSpec::localized(2)).status == Status::StablyEmbedded);
    CHECK(rib_stably_embedded(RibSpec::rationals()).status == Status::NotStablyEmbedded);
    CHECK(rib_uniformly_stably_embedded(RibSpec::integers()));
    CHECK(rib_uniformly_stably_embedded(RibSpec::reals()));
    CHECK_FALSE(rib_uniformly_stably_embedded(RibSpec::rationals()));
}

TEST_CASE("divisibility agrees with enumeration") {
    for (const auto& r : {RibSpec::integers(), RibSpec::rationals(), RibSpec::localized(3), RibSpec::nonstandard_integers()})
        for (long num = -12; num <= 12; ++num)
            for (long den : {1L, 2L, 3L, 5L})
                for (std::int64_t m : {2, 3, 4, 6}) {
                    Coord c(make_rational(num, den));
                    if (!in_domain(r, c)) continue;
                    INFO(r.name(), " ", to_string(c), " m=", m);
                    auto w = rib_divisible(r, c, m);
                    CHECK(w.has_value() == rib_has_mth_part(r, c, m));
                    if (w) CHECK(Rational(static_cast<long>(m)) * w->fin == c.fin);
                }
}

TEST_CASE("the nonstandard part of Z* is divisible") {
    RibSpec r = RibSpec::nonstandard_integers();
    Coord f(Rational(0), Rational(1));
    REQUIRE(in_domain(r, f));
    for (std::int64_t m = 2; m <= 7; ++m) CHECK(rib_divisible(r, f, m).has_value());
    CHECK_FALSE(rib_divisible(r, Coord(Rational(1), Rational(1)), 2).has_value());
    CHECK(rib_elem_equiv(r, RibSpec::integers()));
}

TEST_CASE("elementary equivalence of ribs") {
    CHECK(rib_elem_equiv(RibSpec::reals(), RibSpec::rationals()));
    CHECK_FALSE(rib_elem_equiv(RibSpec::integers(), RibSpec::rationals()));
    CHECK_FALSE(rib_elem_equiv(RibSpec::localized(2), RibSpec::localized(3)));
    CHECK(same_rib(RibSpec::localized(5), RibSpec::localized(5)));
}

TEST_CASE("domains") {
    CHECK(in_domain(RibSpec::integers(), Coord(Rational(4))));
    CHECK_FALSE(in_domain(RibSpec::integers(), Coord(make_rational(1, 2))));
    CHECK(in_domain(RibSpec::localized(2), Coord(make_rational(1, 3))));
    CHECK_FALSE(in_domain(RibSpec::localized(2), Coord(make_rational(1, 4))));
    CHECK_FALSE(in_domain(RibSpec::integers(), Coord(Rational(0), Rational(1))));
}

}
