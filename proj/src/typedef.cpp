#include "oagkit/typedef.hpp"

#include "oagkit/json_io.hpp"

#include <algorithm>

namespace oagkit {

BestApproximation best_approx(const PairSpec& p, const GroupElement& a, std::int64_t n, std::int64_t m) {
    if (m < 0) throw std::invalid_argument("m must be >= 0");
    BestApproximation b;
    b.n = n;
    b.m = m;
    const GroupElement na = g_scale(p.H, a, n);
    Approximation r = approximate(p, na, m);
    b.a_mn = r.g_star;
    if (r.kind == Approximation::NoMaximum) {
        b.no_maximum = true;
        b.from = r.from;
        b.tail = r.tail;
        b.beta = SpineValue::at(r.from);
        return b;
    }
    b.beta = r.beta;
    return b;
}

SpineValue decompose_val(const PairSpec& p, const BestApproximation& b, const GroupElement& g) {
    if (b.no_maximum) throw NoMaximum("no best approximation", b);
    SpineValue v = embed_value(p, val_m(p.G, g_sub(p.G, b.a_mn, g), b.m));
    return min_value(p.H.spine, v, b.beta);
}

std::string describe(const SchemeTarget& t) {
    const std::string n = std::to_string(t.n);
    switch (t.kind) {
        case SchemeTarget::Sign: return n + "a - x > 0";
        case SchemeTarget::CongBullet: return n + "a - x ===" + std::to_string(t.m) + " " + std::to_string(t.k);
        case SchemeTarget::EqBullet: return n + "a - x =** " + std::to_string(t.k);
    }
    return "?";
}

namespace {

SpineTerm val_of(std::int64_t m, Term t) {
    SpineTerm s;
    s.m = m;
    s.t = std::move(t);
    return s;
}

SpineTerm constant(const SpineValue& v) {
    SpineTerm s;
    s.is_const = true;
    s.value = v;
    return s;
}

// a - x
Term a_minus_x() { return Term::var("a").add("x", -1); }

Formula guard_formula(Guard g, std::int64_t m, const SpineValue& beta) {
    CmpOp op = g == Guard::Lt ? CmpOp::Lt : g == Guard::Gt ? CmpOp::Gt : CmpOp::Eq;
    return Formula::val_cmp(val_of(m, a_minus_x()), op, constant(beta));
}

struct Setup {
    DefiningScheme s;
    GroupElement d;                 // n a - a_mn, in H
    std::optional<Position> g_pos;  // beta as a position of G
};

Setup setup(const PairSpec& p, const GroupElement& a, const SchemeTarget& t) {
    Setup st;
    st.s.target = t;
    st.s.best = best_approx(p, a, t.n, t.kind == SchemeTarget::CongBullet ? t.m : 0);
    if (st.s.best.no_maximum)
        throw NoMaximum("val^" + std::to_string(st.s.best.m) + "(" + std::to_string(t.n) +
                            "a - g) has no maximum over G: the type is not definable over G",
                        st.s.best);
    st.s.params["a"] = st.s.best.a_mn;
    st.d = g_sub(p.H, g_scale(p.H, a, t.n), to_H(p, st.s.best.a_mn));
    if (st.s.best.beta.kind == SpineValue::Pos) st.g_pos = preimage(p, st.s.best.beta.pos);
    const std::int64_t m = st.s.best.m;
    for (Guard g : {Guard::Lt, Guard::Gt, Guard::Eq})
        st.s.cases.push_back({g, guard_formula(g, m, st.s.best.beta), Formula::truth(false), false, {}});
    return st;
}

SchemeCase& case_of(DefiningScheme& s, Guard g) {
    return *std::find_if(s.cases.begin(), s.cases.end(), [g](const SchemeCase& c) { return c.guard == g; });
}

GroupElement unit_at(const GroupSpec& g, const Position& p) {
    if (!in_domain(rib_at(g, p), Coord(Rational(1))))
        throw RibCutNotDefinable("the rib at " + describe(SpineValue::at(p)) + " has no unit 1");
    return g_single(g, p, Coord(Rational(1)));
}

void no_value_case(SchemeCase& c, const Setup& st) {
    c.payload = Formula::truth(false);
    c.note = st.s.best.beta.kind == SpineValue::Inf ? "n a lies in G (up to m): the case holds of a - x in mG only, where the target fails"
                                                    : "beta is not a value of G: the case is empty";
}

}  // namespace

DefiningScheme scheme_sign(const PairSpec& p, const GroupElement& a, std::int64_t n) {
    Setup st = setup(p, a, {SchemeTarget::Sign, n, 0, 0});
    DefiningScheme& s = st.s;
    case_of(s, Guard::Lt).payload = Formula::gt0(a_minus_x());
    s.epsilon = g_compare(p.H, st.d, g_zero(p.H)) > 0;
    case_of(s, Guard::Gt).payload = Formula::truth(*s.epsilon);
    SchemeCase& eq = case_of(s, Guard::Eq);
    if (!st.g_pos) {
        no_value_case(eq, st);
        return s;
    }
    const RibSpec rg = rib_at(p.G, *st.g_pos);
    const RibSpec rh = rib_at(p.H, s.best.beta.pos);
    if (!rib_stably_embedded(rg).stably_embedded() && !same_rib(rg, rh))
        throw RibCutNotDefinable("the cut of the rib coordinate over " + rg.name() + " is not definable");
    // x - a0 has coordinate e at beta; n a - x > 0 iff e < c
    const Coord c = coordinate(p.H, st.d, s.best.beta.pos);
    if (!c.standard()) {
        eq.payload = Formula::truth(sgn(c.inf) > 0);
        eq.note = "the rib coordinate of n a - a0 is infinitely " + std::string(sgn(c.inf) > 0 ? "large" : "small");
        return s;
    }
    const Integer num = c.fin.get_num();
    const Integer den = c.fin.get_den();
    if (!num.fits_slong_p() || !den.fits_slong_p()) throw std::overflow_error("rib cut too large");
    s.params["u"] = unit_at(p.G, *st.g_pos);
    // den*(x - a0) < num*u at the leading coordinate
    Term t = Term::var("u", num.get_si()).add("a", den.get_si()).add("x", -den.get_si());
    eq.payload = Formula::gt0(t);
    eq.note = "rib cut below " + to_string(c.fin);
    return s;
}

DefiningScheme scheme_cong(const PairSpec& p, const GroupElement& a, std::int64_t n, std::int64_t m, std::int64_t k) {
    if (m < 2 || k < 1 || k >= m) throw std::invalid_argument("need m >= 2 and 1 <= k < m");
    Setup st = setup(p, a, {SchemeTarget::CongBullet, n, m, k});
    DefiningScheme& s = st.s;
    case_of(s, Guard::Lt).payload = Formula::cong_bullet(a_minus_x(), m, k);
    s.epsilon = pred_cong_bullet(p.H, st.d, m, k);
    case_of(s, Guard::Gt).payload = Formula::truth(*s.epsilon);
    SchemeCase& eq = case_of(s, Guard::Eq);
    if (!st.g_pos) {
        no_value_case(eq, st);
        return s;
    }
    const RibSpec rg = rib_at(p.G, *st.g_pos);
    if (!rg.discrete) {
        eq.payload = Formula::truth(false);
        eq.note = "the rib at beta is not discrete";
        return s;
    }
    // a' = r u with r the residue of the beta-coordinate of n a - a_mn
    const Coord c = coordinate(p.H, st.d, s.best.beta.pos);
    if (!is_integer(c.fin) || !rib_divisible(rib_at(p.H, s.best.beta.pos), Coord(Rational(0), c.inf), m)) {
        eq.unknown = true;
        eq.note = "no representative a' of n a - a_mn modulo m is presented";
        return s;
    }
    Integer r = c.fin.get_num() % Integer(m);
    if (r < 0) r += m;
    Term t = a_minus_x();
    if (r != 0) {
        s.params["u"] = unit_at(p.G, *st.g_pos);
        t.add("u", r.get_si());
    }
    eq.payload = Formula::cong_bullet(t, m, k);
    eq.note = "a' = " + r.get_str() + " times the unit at beta";
    return s;
}

DefiningScheme scheme_eqk(const PairSpec& p, const GroupElement& a, std::int64_t n, std::int64_t k) {
    if (k == 0) throw std::invalid_argument("k must be non-zero");
    Setup st = setup(p, a, {SchemeTarget::EqBullet, n, 0, k});
    DefiningScheme& s = st.s;
    case_of(s, Guard::Lt).payload = Formula::eq_bullet(a_minus_x(), k);
    s.epsilon = !g_is_zero(p.H, st.d) && pred_eq_bullet(p.H, st.d, k);
    case_of(s, Guard::Gt).payload = Formula::truth(*s.epsilon);
    SchemeCase& eq = case_of(s, Guard::Eq);
    if (!st.g_pos) {
        no_value_case(eq, st);
        return s;
    }
    const RibSpec rg = rib_at(p.G, *st.g_pos);
    if (!rg.discrete) {
        eq.payload = Formula::truth(false);
        eq.note = "the rib at beta is not discrete";
        return s;
    }
    // the beta-coordinate of a0 - x must be w = k - c
    const Coord w = Coord(Rational(static_cast<long>(k))) - coordinate(p.H, st.d, s.best.beta.pos);
    if (!in_domain(rg, w)) {
        eq.payload = Formula::truth(false);
        eq.note = "k - c is not a coordinate of G";
        return s;
    }
    s.params["w"] = g_single(p.G, *st.g_pos, w);
    eq.payload = Formula::val_cmp(val_of(0, a_minus_x().add("w", -1)), CmpOp::Gt, constant(s.best.beta));
    eq.note = "a0 - x has coordinate k - c at beta";
    return s;
}

DefiningScheme make_scheme(const PairSpec& p, const GroupElement& a, const SchemeTarget& t) {
    switch (t.kind) {
        case SchemeTarget::Sign: return scheme_sign(p, a, t.n);
        case SchemeTarget::CongBullet: return scheme_cong(p, a, t.n, t.m, t.k);
        case SchemeTarget::EqBullet: return scheme_eqk(p, a, t.n, t.k);
    }
    throw std::invalid_argument("unknown target");
}

bool scheme_eval(const PairSpec& p, const DefiningScheme& s, const GroupElement& g) {
    Env env = s.params;
    env["x"] = g;
    const SchemeCase* hit = nullptr;
    for (const auto& c : s.cases) {
        if (!eval(p.G, c.condition, env, &p)) continue;
        if (hit) throw GuardGap("two guards hold at once");
        hit = &c;
    }
    if (!hit) throw GuardGap("no guard holds");
    if (hit->unknown) throw SchemeUnknown(hit->note);
    return eval(p.G, hit->payload, env, &p);
}

bool direct_truth(const PairSpec& p, const GroupElement& a, const SchemeTarget& t, const GroupElement& g) {
    const GroupElement d = g_sub(p.H, g_scale(p.H, a, t.n), to_H(p, g));
    switch (t.kind) {
        case SchemeTarget::Sign: return g_compare(p.H, d, g_zero(p.H)) > 0;
        case SchemeTarget::CongBullet: return pred_cong_bullet(p.H, d, t.m, t.k);
        case SchemeTarget::EqBullet: return !g_is_zero(p.H, d) && pred_eq_bullet(p.H, d, t.k);
    }
    return false;
}

namespace {

bool constants_ok(const Formula& f, const SpineValue& beta, const ChainSpec& c) {
    auto ok = [&](const SpineTerm& s) { return !s.is_const || same_value(c, s.value, beta); };
    switch (f.kind) {
        case Formula::ValCmp: return ok(f.lhs) && ok(f.rhs);
        case Formula::Colour: return ok(f.lhs);
        case Formula::Not:
        case Formula::And:
        case Formula::Or:
            return std::all_of(f.args.begin(), f.args.end(), [&](const auto& g) { return constants_ok(*g, beta, c); });
        default: return true;
    }
}

}  // namespace

bool parameters_in_G(const PairSpec& p, const DefiningScheme& s) {
    for (const auto& [name, e] : s.params) {
        try {
            validate(p.G, e);
        } catch (const std::exception&) {
            return false;
        }
    }
    for (const auto& c : s.cases)
        for (const Formula* f : {&c.condition, &c.payload}) {
            for (const auto& n : free_names(*f))
                if (n != "x" && !s.params.count(n)) return false;
            if (!constants_ok(*f, s.best.beta, p.H.spine)) return false;
        }
    return true;
}

Json to_json(const PairSpec& p, const DefiningScheme& s) {
    static const char* guards[] = {"lt", "gt", "eq"};
    Json cases = Json::array();
    for (const auto& c : s.cases) {
        Json jc{{"guard", guards[static_cast<int>(c.guard)]}, {"condition", print(c.condition)}, {"payload", print(c.payload)}};
        if (c.unknown) jc["status"] = "Unknown";
        if (!c.note.empty()) jc["note"] = c.note;
        cases.push_back(jc);
    }
    Json params = Json::object();
    for (const auto& [name, e] : s.params) params[name] = to_json(p.G, e);
    params["beta"] = to_json(s.best.beta);
    Json j{{"target", describe(s.target)}, {"cases", cases}, {"params", params}};
    if (s.epsilon) j["epsilon"] = *s.epsilon;
    return j;
}

std::vector<CombinationScheme> combination_schemes(const PairSpec& p, const std::vector<GroupElement>& as,
                                                   const SchemeTarget& t, std::int64_t bound) {
    if (bound < 0) throw std::invalid_argument("bound must be >= 0");
    std::vector<CombinationScheme> out;
    std::vector<std::int64_t> z(as.size(), -bound);
    if (as.empty()) return out;
    while (true) {
        GroupElement sum = g_zero(p.H);
        for (std::size_t i = 0; i < as.size(); ++i) sum = g_add(p.H, sum, g_scale(p.H, as[i], z[i]));
        CombinationScheme c{z, std::nullopt, {}};
        try {
            SchemeTarget tt = t;
            tt.n = 1;
            c.scheme = make_scheme(p, sum, tt);
        } catch (const std::exception& e) {
            c.error = e.what();
        }
        out.push_back(std::move(c));
        std::size_t i = 0;
        while (i < z.size() && z[i] == bound) z[i++] = -bound;
        if (i == z.size()) break;
        ++z[i];
    }
    return out;
}

}  // namespace oagkit
