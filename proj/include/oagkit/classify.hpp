#pragma once

#include "oagkit/pseudo.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace oagkit {

struct NotRegular : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct NotFRR : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct HypothesisViolated : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Definable convex subgroups {0} = D_0 < ... < D_n = G, one quotient per class of the
/// regular spine, listed from the top of the spine down.
struct RegularRank {
    bool finite = false;
    std::vector<QuotientClass> quotients;  // D_{i+1}/D_i, i = 0..n-1
    Quotient spine;

    std::size_t subgroups() const { return quotients.size() + 1; }
};
RegularRank regular_rank(const GroupSpec& g);

Verdict classify_regular(const GroupSpec& g);
Verdict classify_frr(const GroupSpec& g);
Verdict classify_main(const GroupSpec& g);
Verdict all_cuts_definable(const GroupSpec& g);

Check check_elementary_pair(const PairSpec& p);
Verdict classify_pair(const PairSpec& p);

/// Primes p for which some rib of G is not p-divisible (bounded search).
std::vector<std::int64_t> active_primes(const GroupSpec& g, std::int64_t bound = 12);

}  // namespace oagkit
