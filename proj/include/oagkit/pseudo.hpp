#pragma once

#include "oagkit/pair.hpp"

#include <array>
#include <optional>
#include <stdexcept>
#include <vector>

namespace oagkit {

/// Term n is the element with coordinates f(0), ..., f(n-1) on positions 0..n-1 of
/// segment `seg`, where f runs through `prefix` and then repeats `cycle`.
struct SequenceRule {
    std::size_t seg = 0;
    std::vector<Coord> prefix;
    std::vector<Coord> cycle;
    std::size_t offset = 1;  // term i of the sequence is pattern length i + offset

    Coord at(std::size_t i) const;
    GroupElement term(const GroupSpec& g, std::size_t i) const;
};

struct PseudoSequence {
    std::vector<GroupElement> terms;
    std::int64_t modulus = 0;
    std::optional<SequenceRule> rule;
};

/// Expands `extra` further terms from the rule, if any.
PseudoSequence with_rule_terms(const GroupSpec& g, const PseudoSequence& s, std::size_t extra);

struct TooShort : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct NotPseudoCauchy : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct LiftObstruction : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CauchyCheck {
    bool pseudo_cauchy = false;
    std::size_t threshold = 0;                 // the inequality holds for all threshold <= i < j < k
    std::optional<std::array<std::size_t, 3>> violation;
    bool degenerate = false;                   // two terms agree modulo the valuation
};
CauchyCheck is_pseudo_cauchy(const GroupSpec& g, const PseudoSequence& s);
bool is_pseudo_limit(const GroupSpec& g, const PseudoSequence& s, const GroupElement& a);

/// A pseudo-limit in the Hahn product, returned as an element of `presentation`
/// (G plus one generator for the limit tail when needed).
struct HahnLimit {
    bool representable = false;
    GroupSpec presentation;
    GroupElement limit;
    std::string reason;
};
HahnLimit hahn_pseudo_limit(const GroupSpec& g, const PseudoSequence& s);

/// Lift of a val^m pseudo-Cauchy sequence to a val pseudo-Cauchy sequence, term by term congruent mod m.
PseudoSequence lift_mod_m(const GroupSpec& g, const PseudoSequence& s);

enum class Immediacy { Immediate, NotImmediate, NoMaximumDetected };
const char* to_string(Immediacy i);

struct ImmediateCheck {
    Immediacy status = Immediacy::NotImmediate;
    SpineValue witness;  // NotImmediate: the maximum of {val(h - g)}
    Approximation approx;
};
/// With m > 0 the same question for (G/mG, val^m) inside (H/mH, val^m).
ImmediateCheck immediate_ext_check(const PairSpec& p, const GroupElement& h, std::int64_t m = 0);
/// Pair level: Immediate when the spines and ribs agree and every generator of H outside G
/// gives NoMaximumDetected.
ImmediateCheck pair_immediate(const PairSpec& p, std::int64_t m = 0);

}  // namespace oagkit
