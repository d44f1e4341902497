#pragma once

#include "oagkit/formula.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace oagkit {

/// a_mn in G with beta_mn = val^m(n a - a_mn) maximal, beta_mn read in the spine of H.
/// With no_maximum set, the greedy scan ran into the certificate (from, tail) instead.
struct BestApproximation {
    std::int64_t n = 1;
    std::int64_t m = 0;
    bool no_maximum = false;
    GroupElement a_mn;
    SpineValue beta;
    Position from;
    Coord tail;
};

struct NoMaximum : std::runtime_error {
    BestApproximation certificate;
    NoMaximum(const std::string& what, BestApproximation c) : std::runtime_error(what), certificate(std::move(c)) {}
};
struct RibCutNotDefinable : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct GuardGap : std::logic_error {
    using std::logic_error::logic_error;
};
/// The (=) case of a congruence scheme when no representative a' can be exhibited.
struct SchemeUnknown : std::runtime_error {
    using std::runtime_error::runtime_error;
};

BestApproximation best_approx(const PairSpec& p, const GroupElement& a, std::int64_t n, std::int64_t m);
/// min(val^m(a_mn - g), beta_mn), computed in G and read in the spine of H.
SpineValue decompose_val(const PairSpec& p, const BestApproximation& b, const GroupElement& g);

struct SchemeTarget {
    enum Kind { Sign, CongBullet, EqBullet } kind = Sign;
    std::int64_t n = 1;
    std::int64_t m = 0;
    std::int64_t k = 0;
};
std::string describe(const SchemeTarget& t);

enum class Guard { Lt, Gt, Eq };

struct SchemeCase {
    Guard guard = Guard::Lt;
    Formula condition;  // val^m(a - x) compared with beta
    Formula payload;
    bool unknown = false;
    std::string note;
};

/// Membership of x in {g in G : the target holds of n a - g}, as three guarded cases.
/// Parameters: the G-elements in `params` and the single spine constant beta.
struct DefiningScheme {
    SchemeTarget target;
    BestApproximation best;
    std::vector<SchemeCase> cases;
    Env params;
    std::optional<bool> epsilon;
};

DefiningScheme scheme_sign(const PairSpec& p, const GroupElement& a, std::int64_t n);
DefiningScheme scheme_cong(const PairSpec& p, const GroupElement& a, std::int64_t n, std::int64_t m, std::int64_t k);
DefiningScheme scheme_eqk(const PairSpec& p, const GroupElement& a, std::int64_t n, std::int64_t k);
DefiningScheme make_scheme(const PairSpec& p, const GroupElement& a, const SchemeTarget& t);

bool scheme_eval(const PairSpec& p, const DefiningScheme& s, const GroupElement& g);
/// The target evaluated directly in H.
bool direct_truth(const PairSpec& p, const GroupElement& a, const SchemeTarget& t, const GroupElement& g);
/// Every free name of every case is x or a parameter lying in G; the only spine constant is beta.
bool parameters_in_G(const PairSpec& p, const DefiningScheme& s);

Json to_json(const PairSpec& p, const DefiningScheme& s);

/// Schemes for the combinations z_0 a_0 + ... of the given elements with |z_i| <= bound.
/// The type of the tuple is the union of these types together with the values they mention.
struct CombinationScheme {
    std::vector<std::int64_t> z;
    std::optional<DefiningScheme> scheme;
    std::string error;
};
std::vector<CombinationScheme> combination_schemes(const PairSpec& p, const std::vector<GroupElement>& as,
                                                   const SchemeTarget& t, std::int64_t bound);

}  // namespace oagkit
