#include "oagkit/formula.hpp"

#include "oagkit/json_io.hpp"

#include <algorithm>
#include <cctype>

namespace oagkit {

Term Term::var(const std::string& name, std::int64_t c) {
    Term t;
    t.add(name, c);
    return t;
}

Term& Term::add(const std::string& name, std::int64_t c) {
    auto it = std::find_if(coeffs.begin(), coeffs.end(), [&](const auto& e) { return e.first == name; });
    if (it == coeffs.end()) {
        if (c) coeffs.emplace_back(name, c);
    } else if ((it->second += c) == 0) {
        coeffs.erase(it);
    }
    return *this;
}

Term Term::operator+(const Term& o) const {
    Term r = *this;
    for (const auto& [n, c] : o.coeffs) r.add(n, c);
    return r;
}

Term Term::operator-(const Term& o) const { return *this + o.scaled(-1); }

Term Term::scaled(std::int64_t k) const {
    Term r;
    for (const auto& [n, c] : coeffs) r.add(n, c * k);
    return r;
}

Formula Formula::truth(bool b) {
    Formula f;
    f.kind = b ? True : False;
    return f;
}

Formula Formula::gt0(Term t) {
    Formula f;
    f.kind = Gt0;
    f.t = std::move(t);
    return f;
}

Formula Formula::cong_m(Term t, std::int64_t m) {
    Formula f;
    f.kind = CongM;
    f.t = std::move(t);
    f.m = m;
    return f;
}

Formula Formula::cong_bullet(Term t, std::int64_t m, std::int64_t k) {
    Formula f = cong_m(std::move(t), m);
    f.kind = CongBullet;
    f.k = k;
    return f;
}

Formula Formula::eq_bullet(Term t, std::int64_t k) {
    Formula f;
    f.kind = EqBullet;
    f.t = std::move(t);
    f.k = k;
    return f;
}

Formula Formula::val_cmp(SpineTerm l, CmpOp op, SpineTerm r) {
    Formula f;
    f.kind = ValCmp;
    f.lhs = std::move(l);
    f.op = op;
    f.rhs = std::move(r);
    return f;
}

Formula Formula::in_colour(std::string name, SpineTerm s) {
    Formula f;
    f.kind = Colour;
    f.colour = std::move(name);
    f.lhs = std::move(s);
    return f;
}

Formula Formula::negation(Formula g) {
    Formula f;
    f.kind = Not;
    f.args.push_back(std::make_shared<const Formula>(std::move(g)));
    return f;
}

Formula Formula::conj(std::vector<Formula> fs) {
    if (fs.size() == 1) return fs.front();
    Formula f;
    f.kind = fs.empty() ? True : And;
    for (auto& g : fs) f.args.push_back(std::make_shared<const Formula>(std::move(g)));
    return f;
}

Formula Formula::disj(std::vector<Formula> fs) {
    if (fs.size() == 1) return fs.front();
    Formula f;
    f.kind = fs.empty() ? False : Or;
    for (auto& g : fs) f.args.push_back(std::make_shared<const Formula>(std::move(g)));
    return f;
}

// ---------------------------------------------------------------- parser

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

bool is_val_name(const std::string& s) {
    return s.size() > 3 && s.compare(0, 3, "val") == 0 &&
           std::all_of(s.begin() + 3, s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

class Parser {
public:
    explicit Parser(const std::string& s) : s_(s) {}

    Formula run() {
        Formula f = disjunction();
        skip();
        if (i_ != s_.size()) fail("unexpected input");
        return f;
    }

private:
    const std::string& s_;
    std::size_t i_ = 0;

    [[noreturn]] void fail(const std::string& what) const { throw SyntaxError(what, i_); }

    void skip() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    }

    bool peek(const std::string& tok) {
        skip();
        return s_.compare(i_, tok.size(), tok) == 0;
    }

    bool accept(const std::string& tok) {
        if (!peek(tok)) return false;
        i_ += tok.size();
        return true;
    }

    void expect(const std::string& tok) {
        if (!accept(tok)) fail("expected '" + tok + "'");
    }

    std::string peek_ident() {
        skip();
        std::size_t j = i_;
        if (j >= s_.size() || !ident_start(s_[j])) return {};
        while (j < s_.size() && ident_char(s_[j])) ++j;
        return s_.substr(i_, j - i_);
    }

    std::string ident() {
        std::string id = peek_ident();
        if (id.empty()) fail("expected a name");
        i_ += id.size();
        return id;
    }

    std::int64_t integer() {
        skip();
        std::size_t j = i_;
        if (j < s_.size() && s_[j] == '-') ++j;
        std::size_t d = j;
        while (j < s_.size() && std::isdigit(static_cast<unsigned char>(s_[j]))) ++j;
        if (j == d) fail("expected an integer");
        if (j - d > 17) fail("integer too large");
        std::int64_t v = std::stoll(s_.substr(i_, j - i_));
        i_ = j;
        return v;
    }

    std::int64_t natural() {
        skip();
        if (i_ < s_.size() && s_[i_] == '-') fail("expected a natural number");
        return integer();
    }

    bool at_digit() {
        skip();
        return i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]));
    }

    Formula disjunction() {
        std::vector<Formula> fs{conjunction()};
        while (accept("|")) fs.push_back(conjunction());
        return Formula::disj(std::move(fs));
    }

    Formula conjunction() {
        std::vector<Formula> fs{unary()};
        while (accept("&")) fs.push_back(unary());
        return Formula::conj(std::move(fs));
    }

    Formula unary() {
        if (accept("!")) return Formula::negation(unary());
        if (accept("(")) {
            Formula f = disjunction();
            expect(")");
            if (f.kind == Formula::And || f.kind == Formula::Or) {
                // keep the grouping visible as a nested node
                Formula g;
                g.kind = f.kind;
                g.args = f.args;
                return g;
            }
            return f;
        }
        const std::string id = peek_ident();
        if (id == "true" || id == "false") {
            i_ += id.size();
            return Formula::truth(id == "true");
        }
        if (id == "colour") {
            i_ += id.size();
            expect("[");
            std::string name = ident();
            expect("]");
            expect("(");
            SpineTerm st = spine_term();
            expect(")");
            return Formula::in_colour(std::move(name), std::move(st));
        }
        if (is_val_name(id)) {
            SpineTerm l = spine_term();
            CmpOp op = cmp_op();
            SpineTerm r = spine_term();
            return Formula::val_cmp(std::move(l), op, std::move(r));
        }
        Term t = term();
        if (accept("===")) {
            std::int64_t m = natural();
            std::int64_t k = integer();
            return Formula::cong_bullet(std::move(t), m, k);
        }
        if (accept("=**")) return Formula::eq_bullet(std::move(t), integer());
        if (accept("%")) {
            std::int64_t m = natural();
            if (integer() != 0) fail("a congruence is written 't %m 0'");
            return Formula::cong_m(std::move(t), m);
        }
        if (accept(">")) {
            if (integer() != 0) fail("a sign atom is written 't > 0'");
            return Formula::gt0(std::move(t));
        }
        fail("expected an atom");
    }

    CmpOp cmp_op() {
        if (accept("<=")) return CmpOp::Le;
        if (accept(">=")) return CmpOp::Ge;
        if (accept("!=")) return CmpOp::Ne;
        if (accept("<")) return CmpOp::Lt;
        if (accept(">")) return CmpOp::Gt;
        if (accept("=")) return CmpOp::Eq;
        fail("expected a comparison");
    }

    SpineTerm spine_term() {
        SpineTerm st;
        const std::string id = peek_ident();
        if (is_val_name(id)) {
            i_ += id.size();
            st.m = std::stoll(id.substr(3));
            expect("(");
            st.t = term();
            expect(")");
            return st;
        }
        st.is_const = true;
        if (id == "inf") {
            i_ += id.size();
            st.value = SpineValue::infinity();
            return st;
        }
        skip();
        if (i_ >= s_.size() || s_[i_] != '{') fail("expected val{m}(t), inf or a JSON spine value");
        const std::size_t start = i_;
        int depth = 0;
        bool in_str = false;
        for (; i_ < s_.size(); ++i_) {
            char c = s_[i_];
            if (in_str) {
                if (c == '\\') ++i_;
                else if (c == '"') in_str = false;
                continue;
            }
            if (c == '"') in_str = true;
            else if (c == '{') ++depth;
            else if (c == '}' && --depth == 0) break;
        }
        if (i_ >= s_.size()) {
            i_ = start;
            fail("unterminated JSON literal");
        }
        ++i_;
        try {
            st.value = spine_value_from_json(Json::parse(s_.substr(start, i_ - start)));
        } catch (const std::exception& e) {
            i_ = start;
            fail(std::string("bad spine literal: ") + e.what());
        }
        return st;
    }

    std::pair<std::string, std::int64_t> summand(std::int64_t sign) {
        std::int64_t c = 1;
        if (at_digit()) {
            c = natural();
            if (!accept("*")) {
                if (c != 0) fail("expected '*'");
                return {{}, 0};
            }
        }
        std::string name = ident();
        if (is_val_name(name) || name == "inf" || name == "true" || name == "false" || name == "colour")
            fail("reserved word '" + name + "' used as a name");
        return {name, sign * c};
    }

    Term term() {
        Term t;
        std::int64_t sign = accept("-") ? -1 : 1;
        auto [n, c] = summand(sign);
        if (!n.empty()) t.add(n, c);
        while (true) {
            if (peek("+")) {
                ++i_;
                sign = 1;
            } else if (peek("-")) {
                ++i_;
                sign = -1;
            } else {
                break;
            }
            auto [n2, c2] = summand(sign);
            if (n2.empty()) fail("expected a name");
            t.add(n2, c2);
        }
        return t;
    }
};

const char* op_text(CmpOp op) {
    switch (op) {
        case CmpOp::Lt: return "<";
        case CmpOp::Le: return "<=";
        case CmpOp::Eq: return "=";
        case CmpOp::Ne: return "!=";
        case CmpOp::Gt: return ">";
        case CmpOp::Ge: return ">=";
    }
    return "?";
}

std::string print(const SpineTerm& s) {
    if (!s.is_const) return "val" + std::to_string(s.m) + "(" + print(s.t) + ")";
    if (s.value.is_inf()) return "inf";
    return to_json(s.value).dump();
}

Json to_json(const Term& t) {
    Json j = Json::object();
    for (const auto& [n, c] : t.coeffs) j[n] = c;
    return j;
}

Json to_json(const SpineTerm& s) {
    if (s.is_const) return Json{{"const", to_json(s.value)}};
    return Json{{"val", s.m}, {"term", to_json(s.t)}};
}

}  // namespace

Formula parse_formula(const std::string& text) { return Parser(text).run(); }

std::string print(const Term& t) {
    if (t.coeffs.empty()) return "0";
    std::string out;
    for (std::size_t i = 0; i < t.coeffs.size(); ++i) {
        auto [n, c] = t.coeffs[i];
        if (i == 0) {
            if (c < 0) out += "-";
        } else {
            out += c < 0 ? " - " : " + ";
        }
        std::int64_t a = c < 0 ? -c : c;
        if (a != 1) out += std::to_string(a) + "*";
        out += n;
    }
    return out;
}

std::string print(const Formula& f) {
    auto child = [](const Formula& g, bool paren) { return paren ? "(" + print(g) + ")" : print(g); };
    switch (f.kind) {
        case Formula::True: return "true";
        case Formula::False: return "false";
        case Formula::Gt0: return print(f.t) + " > 0";
        case Formula::CongM: return print(f.t) + " %" + std::to_string(f.m) + " 0";
        case Formula::CongBullet: return print(f.t) + " ===" + std::to_string(f.m) + " " + std::to_string(f.k);
        case Formula::EqBullet: return print(f.t) + " =** " + std::to_string(f.k);
        case Formula::ValCmp: return print(f.lhs) + " " + op_text(f.op) + " " + print(f.rhs);
        case Formula::Colour: return "colour[" + f.colour + "](" + print(f.lhs) + ")";
        case Formula::Not: {
            const Formula& g = *f.args.front();
            return "!" + child(g, g.kind == Formula::And || g.kind == Formula::Or);
        }
        case Formula::And:
        case Formula::Or: {
            std::string out;
            for (std::size_t i = 0; i < f.args.size(); ++i) {
                const Formula& g = *f.args[i];
                if (i) out += f.kind == Formula::And ? " & " : " | ";
                bool paren = g.kind == Formula::Or || (g.kind == Formula::And && f.kind == Formula::And);
                out += child(g, paren);
            }
            return out;
        }
    }
    return "?";
}

Json to_json(const Formula& f) {
    static const char* names[] = {"true", "false", "gt0", "cong", "cong_bullet", "eq_bullet", "val_cmp", "colour", "not", "and", "or"};
    Json j{{"kind", names[f.kind]}};
    switch (f.kind) {
        case Formula::Gt0: j["term"] = to_json(f.t); break;
        case Formula::CongM: j["term"] = to_json(f.t); j["m"] = f.m; break;
        case Formula::CongBullet: j["term"] = to_json(f.t); j["m"] = f.m; j["k"] = f.k; break;
        case Formula::EqBullet: j["term"] = to_json(f.t); j["k"] = f.k; break;
        case Formula::ValCmp: j["lhs"] = to_json(f.lhs); j["op"] = op_text(f.op); j["rhs"] = to_json(f.rhs); break;
        case Formula::Colour: j["colour"] = f.colour; j["value"] = to_json(f.lhs); break;
        case Formula::Not:
        case Formula::And:
        case Formula::Or:
            j["args"] = Json::array();
            for (const auto& g : f.args) j["args"].push_back(to_json(*g));
            break;
        default: break;
    }
    return j;
}

std::vector<std::string> free_names(const Formula& f) {
    std::vector<std::string> out;
    auto add_term = [&](const Term& t) {
        for (const auto& [n, c] : t.coeffs)
            if (std::find(out.begin(), out.end(), n) == out.end()) out.push_back(n);
    };
    auto add_spine = [&](const SpineTerm& s) {
        if (!s.is_const) add_term(s.t);
    };
    switch (f.kind) {
        case Formula::Gt0:
        case Formula::CongM:
        case Formula::CongBullet:
        case Formula::EqBullet: add_term(f.t); break;
        case Formula::ValCmp: add_spine(f.lhs); add_spine(f.rhs); break;
        case Formula::Colour: add_spine(f.lhs); break;
        case Formula::Not:
        case Formula::And:
        case Formula::Or:
            for (const auto& g : f.args)
                for (const auto& n : free_names(*g))
                    if (std::find(out.begin(), out.end(), n) == out.end()) out.push_back(n);
            break;
        default: break;
    }
    return out;
}

// ---------------------------------------------------------------- evaluation

GroupElement eval_term(const GroupSpec& g, const Term& t, const Env& env) {
    GroupElement out = g_zero(g);
    for (const auto& [n, c] : t.coeffs) {
        auto it = env.find(n);
        if (it == env.end()) throw UnboundVariable("unbound name " + n);
        out = g_add_scaled(g, out, it->second, c);
    }
    return out;
}

SpineValue embed_value(const PairSpec& p, const SpineValue& v) {
    switch (v.kind) {
        case SpineValue::Inf: return v;
        case SpineValue::Pos: return SpineValue::at(*embed(p, v.pos));
        case SpineValue::Limit: return SpineValue::limit(p.embedding.at(v.seg).h_seg);
    }
    return v;
}

namespace {

SpineValue spine_eval(const GroupSpec& g, const SpineTerm& s, const Env& env, const PairSpec* pair) {
    if (s.is_const) return s.value;
    if (s.m < 0) throw std::invalid_argument("val needs m >= 0");
    SpineValue v = val_m(g, eval_term(g, s.t, env), s.m);
    return pair ? embed_value(*pair, v) : v;
}

bool holds(CmpOp op, std::strong_ordering c) {
    switch (op) {
        case CmpOp::Lt: return c < 0;
        case CmpOp::Le: return c <= 0;
        case CmpOp::Eq: return c == 0;
        case CmpOp::Ne: return c != 0;
        case CmpOp::Gt: return c > 0;
        case CmpOp::Ge: return c >= 0;
    }
    return false;
}

}  // namespace

bool eval(const GroupSpec& g, const Formula& f, const Env& env, const PairSpec* pair) {
    const ChainSpec& chain = pair ? pair->H.spine : g.spine;
    switch (f.kind) {
        case Formula::True: return true;
        case Formula::False: return false;
        case Formula::Gt0: return g_compare(g, eval_term(g, f.t, env), g_zero(g)) > 0;
        case Formula::CongM: {
            GroupElement a = eval_term(g, f.t, env);
            if (f.m == 0) return g_is_zero(g, a);
            return g_in_mG(g, a, f.m).divisible;
        }
        case Formula::CongBullet: return pred_cong_bullet(g, eval_term(g, f.t, env), f.m, f.k);
        case Formula::EqBullet: {
            GroupElement a = eval_term(g, f.t, env);
            return !g_is_zero(g, a) && pred_eq_bullet(g, a, f.k);
        }
        case Formula::ValCmp:
            return holds(f.op, compare_values(chain, spine_eval(g, f.lhs, env, pair), spine_eval(g, f.rhs, env, pair)));
        case Formula::Colour: {
            SpineValue v = spine_eval(g, f.lhs, env, pair);
            auto it = std::find_if(chain.colours.begin(), chain.colours.end(), [&](const ColourRule& c) { return c.name == f.colour; });
            if (it == chain.colours.end()) throw std::invalid_argument("unknown colour " + f.colour);
            if (v.kind == SpineValue::Inf) return it->contains_top;
            if (v.kind == SpineValue::Limit) return false;
            return in_colour(chain, *it, v.pos);
        }
        case Formula::Not: return !eval(g, *f.args.front(), env, pair);
        case Formula::And:
            return std::all_of(f.args.begin(), f.args.end(), [&](const auto& a) { return eval(g, *a, env, pair); });
        case Formula::Or:
            return std::any_of(f.args.begin(), f.args.end(), [&](const auto& a) { return eval(g, *a, env, pair); });
    }
    return false;
}

}  // namespace oagkit
