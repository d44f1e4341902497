#include "support.hpp"

#include <doctest.h>

using namespace oagkit;
using namespace oagkit::testing;

namespace {

ChainSpec dense_with_colour() {
    ChainSpec c = ChainSpec::of({Segment::dense_complete()});
    SegmentRule r;
    r.seg = 0;
    r.kind = RuleKind::DenseCodense;
    c.colours.push_back({"Q", {r}, false});
    return c;
}

ChainSpec omega_omega_star(bool with_predicate) {
    ChainSpec c = ChainSpec::of({Segment::omega(), Segment::omega_star()});
    if (with_predicate) {
        SegmentRule r;
        r.seg = 0;
        r.kind = RuleKind::All;
        c.colours.push_back({"P", {r}, false});
    }
    return c;
}

}  // namespace

TEST_SUITE("chain") {

TEST_CASE("stable embeddedness of the basic chains") {
    for (const auto& c : {ChainSpec::of({Segment::omega()}), ChainSpec::of({Segment::omega_star()}),
                          ChainSpec::of({Segment::integers()}), dense_with_colour(), omega_omega_star(true)}) {
        INFO(describe(c));
        CHECK(chain_stably_embedded(c).status == Status::StablyEmbedded);
    }
    Verdict v = chain_stably_embedded(omega_omega_star(false));
    CHECK(v.status == Status::NotStablyEmbedded);
    REQUIRE_FALSE(v.reasons.empty());
    CHECK(v.reasons.front().witness.at("kind") == "SegmentBoundary");
}

TEST_CASE("dense rationals leave interior gaps undefinable") {
    CHECK(chain_stably_embedded(ChainSpec::of({Segment::dense_q()})).status == Status::NotStablyEmbedded);
}

TEST_CASE("compare_positions is a strict total order on sampled points") {
    ChainSpec c = ChainSpec::of({Segment::fin(2), Segment::omega(), Segment::omega_star(), Segment::integers(), Segment::dense_q()});
    std::vector<Position> pts{Position::at(0, 0), Position::at(0, 1), Position::at(1, 0), Position::at(1, 7),
                              Position::at(2, 9), Position::at(2, 0), Position::at(3, -4), Position::at(3, 5),
                              Position::at(4, Rational(-1, 3)), Position::at(4, Rational(2, 7)), Position::infinity()};
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = 0; j < pts.size(); ++j) {
            auto o = compare_positions(c, pts[i], pts[j]);
            CHECK((o == 0) == (i == j));
            CHECK((o < 0) == (i < j));
        }
}

TEST_CASE("positions outside the segment are rejected") {
    ChainSpec c = ChainSpec::of({Segment::fin(2), Segment::omega()});
    CHECK_THROWS_AS(validate(c, Position::at(0, 2)), PositionOutOfDomain);
    CHECK_THROWS_AS(validate(c, Position::at(1, -1)), PositionOutOfDomain);
    CHECK_NOTHROW(validate(c, Position::at(1, 40)));
}

TEST_CASE("cut classification") {
    ChainSpec c = omega_omega_star(false);
    CHECK(classify_cut(c, Cut::minus_inf()).status == Definability::Definable);
    CHECK(classify_cut(c, Cut::boundary(0)).status == Definability::NotDefinable);
    CHECK(classify_cut(c, Cut::principal_plus(Position::at(0, 3))).status == Definability::Definable);
    CHECK(classify_cut(omega_omega_star(true), Cut::boundary(0)).status == Definability::Definable);
}

TEST_CASE("ordered sums concatenate segments") {
    ChainSpec s = ordered_sum(ChainSpec::of({Segment::omega()}), ChainSpec::of({Segment::omega_star()}));
    CHECK(s.segments.size() == 2);
    CHECK(s.segments[1].kind == SegKind::OmegaStar);
}

}
