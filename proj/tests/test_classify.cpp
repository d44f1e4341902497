#include "support.hpp"

#include <doctest.h>

using namespace oagkit;
using namespace oagkit::testing;

TEST_SUITE("classify") {

TEST_CASE("catalogue of the main classification") {
    const std::pair<const char*, Status> table[] = {
        {"g1", Status::StablyEmbedded},
        {"g1sum", Status::NotStablyEmbedded},
        {"g2", Status::StablyEmbedded},
        {"g3", Status::NotStablyEmbedded},
        {"g4", Status::Unknown},
        {"q", Status::NotStablyEmbedded},
        {"r", Status::UniformlyStablyEmbedded},
        {"zp", Status::StablyEmbedded},
        {"zstar", Status::NotStablyEmbedded},
    };
    for (auto [name, want] : table) {
        INFO(name);
        Verdict v = classify_main(load(name));
        CHECK(v.status == want);
        CHECK_FALSE(v.reasons.empty());
    }
}

TEST_CASE("finite regular rank") {
    const std::pair<const char*, Status> frr[] = {
        {"z", Status::UniformlyStablyEmbedded},  {"z2", Status::UniformlyStablyEmbedded},
        {"z3", Status::UniformlyStablyEmbedded}, {"z2r", Status::UniformlyStablyEmbedded},
        {"zq", Status::NotStablyEmbedded},
    };
    for (auto [name, want] : frr) {
        INFO(name);
        CHECK(classify_frr(load(name)).status == want);
    }
    CHECK(regular_rank(load("zr")).subgroups() == 3);
    CHECK(regular_rank(load("zr")).finite);
    CHECK(regular_rank(load("q")).subgroups() == 2);
    CHECK_THROWS_AS(classify_frr(load("g1")), NotFRR);
}

TEST_CASE("definable cuts") {
    CHECK(all_cuts_definable(load("g1")).stably_embedded());
    CHECK(all_cuts_definable(load("z3")).stably_embedded());
    CHECK(all_cuts_definable(load("q")).status == Status::NotStablyEmbedded);
}

TEST_CASE("elementary pairs") {
    for (const char* name : {"g1_identity", "g2_identity", "gamma_p_identity", "zr_identity", "z_in_zstar", "z2_in_z_zstar",
                             "z2_in_zstar_z", "z3_in_z_zstar_z", "sum_in_hahn", "mod2"}) {
        INFO(name);
        CHECK(check_elementary_pair(load_pair(name)).holds());
    }
}

TEST_CASE("pairs") {
    for (const char* name : {"g1_identity", "g2_identity", "gamma_p_identity", "zr_identity", "z_in_zstar", "z2_in_z_zstar",
                             "z2_in_zstar_z", "z3_in_z_zstar_z"}) {
        INFO(name);
        CHECK(classify_pair(load_pair(name)).status == Status::StablyEmbedded);
    }

    Verdict sum = classify_pair(load_pair("sum_in_hahn"));
    CHECK(sum.status == Status::NotStablyEmbedded);
    REQUIRE_FALSE(sum.reasons.empty());
    CHECK(sum.reasons.back().rule == "maximality");
    CHECK_FALSE(sum.reasons.back().witness.contains("m"));

    Verdict mod2 = classify_pair(load_pair("mod2"));
    CHECK(mod2.status == Status::NotStablyEmbedded);
    REQUIRE_FALSE(mod2.reasons.empty());
    const Reason& r = mod2.reasons.back();
    CHECK(r.rule == "maximality");
    CHECK(r.witness.value("m", 0) == 2);
}

TEST_CASE("active primes") {
    CHECK(active_primes(load("q")).empty());
    CHECK(active_primes(load("z")) == std::vector<std::int64_t>{2, 3, 5, 7, 11});
    auto zp = active_primes(load("zp"));
    CHECK(std::find(zp.begin(), zp.end(), 2) != zp.end());
}

}
