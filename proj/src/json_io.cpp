#include "oagkit/json_io.hpp"

#include <fstream>
#include <regex>

namespace oagkit {

namespace {

[[noreturn]] void fail(const std::string& what) { throw ParseError(what); }

const Json& need(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) fail(std::string("missing key \"") + key + "\"");
    return j.at(key);
}

const char* rule_name(RuleKind k) {
    switch (k) {
        case RuleKind::None: return "None";
        case RuleKind::All: return "All";
        case RuleKind::FiniteSet: return "FiniteSet";
        case RuleKind::CofiniteComplement: return "CofiniteComplement";
        case RuleKind::SchematicSingletons: return "SchematicSingletons";
        case RuleKind::DenseCodense: return "DenseCodense";
    }
    return "None";
}

RuleKind rule_from(const std::string& s) {
    for (auto k : {RuleKind::None, RuleKind::All, RuleKind::FiniteSet, RuleKind::CofiniteComplement,
                   RuleKind::SchematicSingletons, RuleKind::DenseCodense})
        if (s == rule_name(k)) return k;
    fail("unknown colour rule kind " + s);
}

SegKind seg_kind_from(const std::string& s) {
    for (auto k : {SegKind::Fin, SegKind::Omega, SegKind::OmegaStar, SegKind::Int, SegKind::DenseQ,
                   SegKind::DenseComplete})
        if (s == to_string(k)) return k;
    fail("unknown segment kind " + s);
}

}  // namespace

Json to_json(const Rational& r) {
    if (is_integer(r) && r.get_num().fits_slong_p()) return r.get_num().get_si();
    return r.get_str();
}

Rational rational_from_json(const Json& j) {
    if (j.is_number_integer()) return Rational(static_cast<long>(j.get<std::int64_t>()));
    if (j.is_string()) return parse_rational(j.get<std::string>());
    fail("expected an integer or a rational string, got " + j.dump());
}

Json to_json(const Coord& c) {
    if (c.standard()) return to_json(c.fin);
    return Json{{"fin", to_json(c.fin)}, {"inf", to_json(c.inf)}};
}

Coord coord_from_json(const Json& j) {
    if (j.is_object()) return {rational_from_json(need(j, "fin")), rational_from_json(need(j, "inf"))};
    return rational_from_json(j);
}

Json to_json(const Position& p) {
    if (p.inf) return "inf";
    return Json{{"seg", p.seg}, {"coord", to_json(p.coord)}};
}

Position position_from_json(const Json& j) {
    if (j.is_string() && j.get<std::string>() == "inf") return Position::infinity();
    if (j.is_number_integer()) return Position::at(0, j.get<std::int64_t>());
    if (j.is_object()) return Position::at(need(j, "seg").get<std::size_t>(), rational_from_json(need(j, "coord")));
    fail("bad position " + j.dump());
}

Json to_json(const Segment& s) {
    Json j{{"kind", to_string(s.kind)}};
    if (s.kind == SegKind::Fin) j["size"] = s.size;
    return j;
}

Segment segment_from_json(const Json& j) {
    if (j.is_string()) return {seg_kind_from(j.get<std::string>()), 0};
    Segment s{seg_kind_from(need(j, "kind").get<std::string>()), 0};
    if (s.kind == SegKind::Fin) s.size = need(j, "size").get<std::int64_t>();
    return s;
}

Json to_json(const ChainSpec& c) {
    Json segs = Json::array();
    for (const auto& s : c.segments) segs.push_back(to_json(s));
    Json cols = Json::array();
    for (const auto& col : c.colours) {
        Json rules = Json::array();
        for (const auto& r : col.rules) {
            Json jr{{"seg", r.seg}, {"kind", rule_name(r.kind)}};
            if (!r.coords.empty()) {
                jr["coords"] = Json::array();
                for (const auto& x : r.coords) jr["coords"].push_back(to_json(x));
            }
            if (r.kind == RuleKind::DenseCodense) jr["class"] = r.rational_class ? "rational" : "irrational";
            if (r.prime_indexed) jr["primes"] = true;
            rules.push_back(jr);
        }
        Json jc{{"name", col.name}, {"rules", rules}};
        if (col.contains_top) jc["top"] = true;
        cols.push_back(jc);
    }
    return Json{{"segments", segs}, {"colours", cols}};
}

ChainSpec chain_from_json(const Json& j) {
    ChainSpec c;
    for (const auto& s : need(j, "segments")) c.segments.push_back(segment_from_json(s));
    if (j.contains("colours"))
        for (const auto& jc : j.at("colours")) {
            ColourRule col{need(jc, "name").get<std::string>(), {}, jc.value("top", false)};
            for (const auto& jr : need(jc, "rules")) {
                SegmentRule r;
                r.seg = need(jr, "seg").get<std::size_t>();
                r.kind = rule_from(need(jr, "kind").get<std::string>());
                if (jr.contains("coords"))
                    for (const auto& x : jr.at("coords")) r.coords.push_back(rational_from_json(x));
                r.rational_class = jr.value("class", std::string("rational")) == "rational";
                r.prime_indexed = jr.value("primes", false);
                col.rules.push_back(std::move(r));
            }
            c.colours.push_back(std::move(col));
        }
    validate(c);
    return c;
}

Json to_json(const Cut& c) {
    Json j{{"kind", to_string(c.kind)}, {"status", to_string(c.status)}};
    switch (c.kind) {
        case CutKind::PrincipalPlus:
        case CutKind::PrincipalMinus: j["pos"] = to_json(c.pos); break;
        case CutKind::SegmentBoundary:
        case CutKind::InteriorGap: j["seg"] = c.seg; break;
        case CutKind::LimitOfSegment:
            j["seg"] = c.seg;
            j["side"] = c.side == Side::Top ? "top" : "bottom";
            break;
        default: break;
    }
    if (!c.note.empty()) j["note"] = c.note;
    return j;
}

namespace {

const char* index_name(const DivIndex& d) {
    switch (d.cls) {
        case IndexClass::One: return "1";
        case IndexClass::P: return "p";
        case IndexClass::Inf: return "inf";
        case IndexClass::Finite: return nullptr;
    }
    return "1";
}

}  // namespace

Json to_json(const RibSpec& r) {
    Json div = Json::object();
    for (const auto& [p, d] : r.div) {
        const char* n = index_name(d);
        div[std::to_string(p)] = n ? Json(n) : Json(d.value);
    }
    Json dom;
    switch (r.domain) {
        case DomainKind::Int: dom = "int"; break;
        case DomainKind::Rat: dom = "rat"; break;
        case DomainKind::ZStar: dom = "zstar"; break;
        case DomainKind::CoprimeTo: dom = Json{{"coprime_to", r.primes}}; break;
    }
    Json j{{"discrete", r.discrete}, {"div", div}, {"cut_complete", r.cut_complete}, {"domain", dom}};
    if (!r.label.empty()) j["name"] = r.label;
    return j;
}

RibSpec rib_from_json(const Json& j) {
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        if (s == "Z") return RibSpec::integers();
        if (s == "Q") return RibSpec::rationals();
        if (s == "R") return RibSpec::reals();
        if (s == "Z*") return RibSpec::nonstandard_integers();
        static const std::regex loc(R"(Z\((\d+)\))");
        std::smatch m;
        if (std::regex_match(s, m, loc)) {
            std::int64_t p = std::stoll(m[1]);
            if (prime_index(p) < 0) fail("Z(p) needs a prime, got " + s);
            return RibSpec::localized(p);
        }
        fail("unknown rib shorthand " + s);
    }
    RibSpec r;
    r.discrete = need(j, "discrete").get<bool>();
    r.cut_complete = j.value("cut_complete", r.discrete);
    if (j.contains("div"))
        for (const auto& [k, v] : j.at("div").items()) {
            std::int64_t p = std::stoll(k);
            if (prime_index(p) < 0) fail("div profile keys must be primes, got " + k);
            DivIndex d;
            if (v.is_number_integer()) {
                d.value = v.get<std::int64_t>();
                d.cls = d.value == 1 ? IndexClass::One : d.value == p ? IndexClass::P : IndexClass::Finite;
            } else {
                const std::string s = v.get<std::string>();
                if (s == "1") d.cls = IndexClass::One;
                else if (s == "p") d.cls = IndexClass::P, d.value = p;
                else if (s == "inf") d.cls = IndexClass::Inf, d.value = 0;
                else fail("bad index class " + s);
            }
            r.div[p] = d;
        }
    const Json dom = j.value("domain", Json(r.discrete ? "int" : "rat"));
    if (dom.is_string()) {
        const std::string s = dom.get<std::string>();
        if (s == "int") r.domain = DomainKind::Int;
        else if (s == "rat") r.domain = DomainKind::Rat;
        else if (s == "zstar") r.domain = DomainKind::ZStar;
        else fail("unknown rib domain " + s);
    } else {
        r.domain = DomainKind::CoprimeTo;
        r.primes = need(dom, "coprime_to").get<std::vector<std::int64_t>>();
    }
    r.label = j.value("name", std::string());
    if (r.discrete && r.domain != DomainKind::Int && r.domain != DomainKind::ZStar)
        fail("discrete ribs carry integer elements");
    return r;
}

Json to_json(const GroupSpec& g) {
    Json ribs = Json::array();
    for (const auto& a : g.ribs) {
        Json on;
        switch (a.on.kind) {
            case RibSelKind::All: on = "all"; break;
            case RibSelKind::Segment: on = Json{{"seg", a.on.seg}}; break;
            case RibSelKind::Colour: on = Json{{"colour", a.on.colour}}; break;
            case RibSelKind::Point: on = Json{{"pos", to_json(a.on.pos)}}; break;
        }
        Json ja{{"on", on}};
        if (a.localized_by_index) ja["localized_by_index"] = true;
        else ja["rib"] = to_json(a.rib);
        ribs.push_back(ja);
    }
    Json mode = g.mode == Mode::Sum ? "sum" : "hahn";
    if (g.has_generators()) {
        Json gens = Json::array();
        for (const auto& gen : g.generators) {
            Json prefix = Json::array();
            for (const auto& c : gen.prefix) prefix.push_back(to_json(c));
            gens.push_back(Json{{"name", gen.name}, {"prefix", prefix}, {"tail", to_json(gen.tail)}});
        }
        mode = Json{{"generators", gens}};
        if (g.mode == Mode::Hahn) mode["base"] = "hahn";
    }
    Json j{{"spine", to_json(g.spine)}, {"ribs", ribs}, {"mode", mode}};
    if (!g.name.empty()) j["name"] = g.name;
    return j;
}

GroupSpec group_from_json(const Json& j) {
    GroupSpec g;
    g.name = j.value("name", std::string());
    g.spine = chain_from_json(need(j, "spine"));
    if (j.contains("ribs"))
        for (const auto& ja : j.at("ribs")) {
            RibAssignment a;
            const Json on = ja.value("on", Json("all"));
            if (on.is_string() && on.get<std::string>() == "all") a.on.kind = RibSelKind::All;
            else if (on.contains("seg") && on.size() == 1) a.on = {RibSelKind::Segment, on.at("seg").get<std::size_t>()};
            else if (on.contains("colour")) a.on = {RibSelKind::Colour, 0, on.at("colour").get<std::string>()};
            else if (on.contains("pos")) a.on = {RibSelKind::Point, 0, {}, position_from_json(on.at("pos"))};
            else fail("bad rib selector " + on.dump());
            a.localized_by_index = ja.value("localized_by_index", false);
            if (!a.localized_by_index) a.rib = rib_from_json(need(ja, "rib"));
            g.ribs.push_back(std::move(a));
        }
    const Json mode = j.value("mode", Json("hahn"));
    if (mode.is_string()) {
        const std::string s = mode.get<std::string>();
        if (s == "hahn") g.mode = Mode::Hahn;
        else if (s == "sum") g.mode = Mode::Sum;
        else fail("unknown mode " + s);
    } else {
        const std::string base = mode.value("base", std::string("sum"));
        if (base != "sum" && base != "hahn") fail("unknown base " + base);
        g.mode = base == "hahn" ? Mode::Hahn : Mode::Generators;
        for (const auto& jg : need(mode, "generators")) {
            Generator gen;
            gen.name = need(jg, "name").get<std::string>();
            if (jg.contains("prefix"))
                for (const auto& c : jg.at("prefix")) gen.prefix.push_back(coord_from_json(c));
            gen.tail = coord_from_json(need(jg, "tail"));
            g.generators.push_back(std::move(gen));
        }
    }
    try {
        validate(g);
    } catch (const ParseError&) {
        throw;
    } catch (const std::exception& e) {
        fail(std::string("invalid group: ") + e.what());
    }
    return g;
}

Json to_json(const GroupSpec& g, const GroupElement& a) {
    Json fin = Json::array();
    for (const auto& [p, v] : a.finite) fin.push_back(Json::array({to_json(p), to_json(v)}));
    Json gens = Json::object();
    for (std::size_t i = 0; i < a.gens.size() && i < g.generators.size(); ++i)
        if (a.gens[i]) gens[g.generators[i].name] = a.gens[i];
    Json j{{"finite", fin}};
    if (!gens.empty()) j["gens"] = gens;
    return j;
}

GroupElement element_from_json(const GroupSpec& g, const Json& j) {
    GroupElement a = g_zero(g);
    if (j.contains("finite"))
        for (const auto& e : j.at("finite")) {
            if (!e.is_array() || e.size() != 2) fail("finite entries are [position, value] pairs");
            a.finite.emplace_back(position_from_json(e[0]), coord_from_json(e[1]));
        }
    if (j.contains("gens"))
        for (const auto& [name, c] : j.at("gens").items()) {
            auto it = std::find_if(g.generators.begin(), g.generators.end(),
                                   [&](const Generator& x) { return x.name == name; });
            if (it == g.generators.end()) fail("unknown generator " + name);
            a.gens[it - g.generators.begin()] += c.get<std::int64_t>();
        }
    a = canonical(g, a);
    try {
        validate(g, a);
    } catch (const std::exception& e) {
        fail(std::string("invalid element: ") + e.what());
    }
    return a;
}

Json to_json(const SpineValue& v) {
    switch (v.kind) {
        case SpineValue::Inf: return "inf";
        case SpineValue::Pos: return Json{{"pos", to_json(v.pos)}};
        case SpineValue::Limit: return Json{{"limit", {{"seg", v.seg}}}};
    }
    return "inf";
}

SpineValue spine_value_from_json(const Json& j) {
    if (j.is_string() && j.get<std::string>() == "inf") return SpineValue::infinity();
    if (j.is_object() && j.contains("pos")) return SpineValue::at(position_from_json(j.at("pos")));
    if (j.is_object() && j.contains("limit")) return SpineValue::limit(need(j.at("limit"), "seg").get<std::size_t>());
    fail("bad spine value " + j.dump());
}

Json to_json(const SegSet& s) {
    Json j{{"kind", rule_name(s.kind)}};
    if (s.kind == RuleKind::FiniteSet || s.kind == RuleKind::CofiniteComplement) {
        j["coords"] = Json::array();
        for (const auto& x : s.coords) j["coords"].push_back(to_json(x));
    }
    if (s.kind == RuleKind::DenseCodense) j["class"] = s.rational_class ? "rational" : "irrational";
    return j;
}

Json to_json(const ValueSet& s) {
    Json members = Json::array();
    for (const auto& m : s.members) members.push_back(to_json(m));
    return Json{{"members", members}, {"limits", s.limits}, {"inf", true}, {"text", describe(s)}};
}

Json to_json(const Quotient& q) {
    Json pieces = Json::array();
    for (const auto& p : q.pieces) {
        Json jp{{"identity", p.identity}};
        if (p.source) jp["source"] = *p.source;
        if (p.first_absorbs) jp["first_absorbs"] = true;
        if (!p.identity) {
            jp["classes"] = Json::array();
            for (const auto& c : p.classes) {
                Json jc{{"single", c.single}, {"label", c.label}};
                if (c.rib) jc["rib"] = c.rib->name();
                jp["classes"].push_back(jc);
            }
        }
        pieces.push_back(jp);
    }
    return Json{{"chain", to_json(q.chain)}, {"pieces", pieces}, {"text", describe(q.chain)}};
}

Json to_json(const Skeleton& s) {
    Json ribs = Json::array();
    for (std::size_t i = 0; i < s.ribs.size(); ++i) {
        Json pieces = Json::array();
        for (const auto& [rib, where] : s.ribs[i].pieces) pieces.push_back({{"rib", to_json(rib)}, {"on", to_json(where)}});
        Json js{{"seg", i}, {"pieces", pieces}};
        if (s.ribs[i].localized_by_index) js["localized_by_index"] = true;
        ribs.push_back(js);
    }
    return Json{{"chain", to_json(s.chain)}, {"ribs", ribs}, {"text", describe(s.chain)}};
}

PseudoSequence pseudo_from_json(const GroupSpec& g, const Json& j) {
    PseudoSequence s;
    s.modulus = j.value("modulus", std::int64_t{0});
    if (j.contains("terms"))
        for (const auto& t : j.at("terms")) s.terms.push_back(element_from_json(g, t));
    if (j.contains("rule")) {
        const Json& r = j.at("rule");
        SequenceRule rule;
        rule.seg = r.value("seg", std::size_t{0});
        if (r.contains("prefix"))
            for (const auto& c : r.at("prefix")) rule.prefix.push_back(coord_from_json(c));
        for (const auto& c : need(r, "cycle")) rule.cycle.push_back(coord_from_json(c));
        if (rule.cycle.empty()) fail("a sequence rule needs a non-empty cycle");
        rule.offset = r.value("offset", std::size_t{1});
        s.rule = rule;
    }
    return s;
}

Json to_json(const GroupSpec& g, const PseudoSequence& s) {
    Json terms = Json::array();
    for (const auto& t : s.terms) terms.push_back(to_json(g, t));
    Json j{{"modulus", s.modulus}, {"terms", terms}};
    if (s.rule) {
        Json prefix = Json::array(), cycle = Json::array();
        for (const auto& c : s.rule->prefix) prefix.push_back(to_json(c));
        for (const auto& c : s.rule->cycle) cycle.push_back(to_json(c));
        j["rule"] = {{"seg", s.rule->seg}, {"prefix", prefix}, {"cycle", cycle}, {"offset", s.rule->offset}};
    }
    return j;
}

Json to_json(const PairSpec& p, const Approximation& a) {
    if (a.kind == Approximation::Attained)
        return Json{{"kind", "Attained"}, {"g_star", to_json(p.G, a.g_star)}, {"beta", to_json(a.beta)}};
    return Json{{"kind", "NoMaximum"}, {"g_star", to_json(p.G, a.g_star)}, {"from", to_json(a.from)}, {"tail", to_json(a.tail)}};
}

Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail("cannot open " + path);
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        fail(path + ": " + e.what());
    }
}

PairSpec pair_from_json(const Json& j, const std::string& base_dir) {
    auto group = [&](const char* key) {
        const Json& x = need(j, key);
        if (x.is_string()) return group_from_json(load_json_file(base_dir + "/" + x.get<std::string>()));
        return group_from_json(x);
    };
    GroupSpec G = group("G");
    GroupSpec H = group("H");
    const std::string name = j.value("name", std::string());
    if (!j.contains("embedding")) {
        try {
            return make_pair(std::move(G), std::move(H), name);
        } catch (const std::invalid_argument& e) {
            fail(std::string("bad pair: ") + e.what());
        }
    }
    PairSpec p{name, std::move(G), std::move(H), {}};
    for (const auto& e : j.at("embedding"))
        p.embedding.push_back({need(e, "g_seg").get<std::size_t>(), need(e, "h_seg").get<std::size_t>(),
                               e.contains("offset") ? rational_from_json(e.at("offset")) : Rational(0)});
    try {
        validate(p);
    } catch (const std::invalid_argument& e) {
        fail(std::string("bad pair: ") + e.what());
    }
    return p;
}

Json to_json(const PairSpec& p) {
    Json emb = Json::array();
    for (const auto& e : p.embedding) emb.push_back({{"g_seg", e.g_seg}, {"h_seg", e.h_seg}, {"offset", to_json(e.offset)}});
    return Json{{"name", p.name}, {"G", to_json(p.G)}, {"H", to_json(p.H)}, {"embedding", emb}};
}

PairSpec load_pair_file(const std::string& path) {
    const auto slash = path.find_last_of('/');
    return pair_from_json(load_json_file(path), slash == std::string::npos ? "." : path.substr(0, slash));
}

}  // namespace oagkit
