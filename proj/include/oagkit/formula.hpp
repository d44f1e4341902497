#pragma once

#include "oagkit/pair.hpp"

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace oagkit {

/// Integer combination of named elements: variables and parameters alike.
struct Term {
    std::vector<std::pair<std::string, std::int64_t>> coeffs;  // no zero coefficients, names unique

    static Term var(const std::string& name, std::int64_t c = 1);
    Term& add(const std::string& name, std::int64_t c);
    Term operator+(const Term& o) const;
    Term operator-(const Term& o) const;
    Term scaled(std::int64_t k) const;
    bool operator==(const Term&) const = default;
};

/// val{m}(t), or a constant of the spine.
struct SpineTerm {
    bool is_const = false;
    std::int64_t m = 0;
    Term t;
    SpineValue value;
};

enum class CmpOp { Lt, Le, Eq, Ne, Gt, Ge };

struct Formula {
    enum Kind { True, False, Gt0, CongM, CongBullet, EqBullet, ValCmp, Colour, Not, And, Or } kind = True;
    Term t;
    std::int64_t m = 0;
    std::int64_t k = 0;
    SpineTerm lhs, rhs;
    CmpOp op = CmpOp::Eq;
    std::string colour;
    std::vector<std::shared_ptr<const Formula>> args;

    static Formula truth(bool b);
    static Formula gt0(Term t);
    static Formula cong_m(Term t, std::int64_t m);
    static Formula cong_bullet(Term t, std::int64_t m, std::int64_t k);
    static Formula eq_bullet(Term t, std::int64_t k);
    static Formula val_cmp(SpineTerm l, CmpOp op, SpineTerm r);
    static Formula in_colour(std::string name, SpineTerm s);
    static Formula negation(Formula f);
    static Formula conj(std::vector<Formula> fs);
    static Formula disj(std::vector<Formula> fs);
};

struct SyntaxError : std::runtime_error {
    std::size_t position;
    SyntaxError(const std::string& what, std::size_t pos)
        : std::runtime_error(what + " at " + std::to_string(pos)), position(pos) {}
};
struct UnboundVariable : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

Formula parse_formula(const std::string& text);
std::string print(const Term& t);
std::string print(const Formula& f);
Json to_json(const Formula& f);
std::vector<std::string> free_names(const Formula& f);

using Env = std::map<std::string, GroupElement>;

/// Truth in G. With a pair, values of val{m} are read in the spine of H, where the
/// spine constants live; everything else stays inside G.
bool eval(const GroupSpec& g, const Formula& f, const Env& env, const PairSpec* pair = nullptr);
GroupElement eval_term(const GroupSpec& g, const Term& t, const Env& env);
SpineValue embed_value(const PairSpec& p, const SpineValue& v);

}  // namespace oagkit
