// oagkit command line.
#include "oagkit/classify.hpp"
#include "oagkit/formula.hpp"
#include "oagkit/json_io.hpp"
#include "oagkit/typedef.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace oagkit;

namespace {

constexpr int kUsage = 64;

struct Options {
    bool pretty = false;
    bool trace = false;
    std::string command;
    std::string digest;
};
Options opts;

int exit_for(Status s) {
    switch (s) {
        case Status::StablyEmbedded:
        case Status::UniformlyStablyEmbedded: return 0;
        case Status::NotStablyEmbedded: return 1;
        case Status::Unknown: return 2;
    }
    return 2;
}

int exit_for(CheckStatus s) {
    switch (s) {
        case CheckStatus::Holds:
        case CheckStatus::HoldsBounded: return 0;
        case CheckStatus::Fails: return 1;
        case CheckStatus::Unknown: return 2;
    }
    return 2;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open " + path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

// FNV-1a, 64 bit
std::string fnv1a(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    std::ostringstream s;
    s << std::hex << h;
    return s.str();
}

void note_input(const std::string& bytes) { opts.digest = fnv1a(opts.digest + bytes); }

// Inline JSON or a file name.
Json json_arg(const std::string& text) {
    const auto first = text.find_first_not_of(" \t\n");
    if (first != std::string::npos && (text[first] == '{' || text[first] == '[' || text[first] == '"')) {
        note_input(text);
        try {
            return Json::parse(text);
        } catch (const Json::parse_error& e) {
            throw ParseError(std::string("bad JSON argument: ") + e.what());
        }
    }
    note_input(slurp(text));
    return load_json_file(text);
}

std::string dir_of(const std::string& path) {
    const auto slash = path.find_last_of('/');
    return slash == std::string::npos ? "." : path.substr(0, slash);
}

GroupSpec load_group(const std::string& path) { return group_from_json(json_arg(path)); }

struct Input {
    Json raw;
    std::optional<PairSpec> pair;
    GroupSpec group;
};

Input load_input(const std::string& path) {
    Input in;
    in.raw = json_arg(path);
    if (in.raw.contains("G") && in.raw.contains("H")) {
        in.pair = pair_from_json(in.raw, dir_of(path));
        in.group = in.pair->G;
    } else {
        in.group = group_from_json(in.raw);
    }
    return in;
}

PairSpec load_pair(const std::string& path, Json* raw = nullptr) {
    Input in = load_input(path);
    if (!in.pair) throw ParseError(path + " is not a pair (needs G and H)");
    if (raw) *raw = in.raw;
    return *in.pair;
}

void emit(Json out, const Json& trace = nullptr) {
    if (opts.trace) {
        if (!trace.is_null()) out["trace"] = trace;
        out["report"] = {{"command", opts.command}, {"inputs_digest", opts.digest}};
    }
    std::cout << (opts.pretty ? out.dump(2) : out.dump()) << "\n";
}

int emit_verdict(const Verdict& v) {
    Json full = to_json(v);
    emit(Json{{"status", to_string(v.status)}}, full.value("reasons", Json::array()));
    return exit_for(v.status);
}

int emit_check(const Check& c) {
    Json full = to_json(c);
    Json out{{"status", to_string(c.status)}};
    if (c.n) out["n"] = c.n;
    emit(out, full.value("reasons", Json::array()));
    return exit_for(c.status);
}

Json cauchy_json(const CauchyCheck& c) {
    Json j{{"pseudo_cauchy", c.pseudo_cauchy}, {"threshold", c.threshold}, {"degenerate", c.degenerate}};
    if (c.violation) j["violation"] = *c.violation;
    return j;
}

SchemeTarget parse_target(const std::string& kind, std::int64_t n, std::int64_t m, std::int64_t k) {
    SchemeTarget t;
    if (kind == "sign") t.kind = SchemeTarget::Sign;
    else if (kind == "cong") t.kind = SchemeTarget::CongBullet;
    else if (kind == "eq") t.kind = SchemeTarget::EqBullet;
    else throw CLI::ValidationError("--kind", "expected sign, cong or eq");
    t.n = n;
    t.m = t.kind == SchemeTarget::CongBullet ? m : 0;
    t.k = k;
    return t;
}

GroupElement pair_element(const PairSpec& p, const Json& raw, const std::string& element) {
    if (!element.empty()) return element_from_json(p.H, json_arg(element));
    if (!raw.contains("a")) throw ParseError("no element given and the pair file has no \"a\"");
    return element_from_json(p.H, raw.at("a"));
}

// ---- corpus

struct CaseResult {
    bool pass = false;
    std::string got;
};

std::string status_of(const std::function<Verdict()>& f) {
    try {
        return to_string(f().status);
    } catch (const HypothesisViolated& e) {
        return "HypothesisViolated";
    } catch (const NotFRR& e) {
        return "NotFRR";
    } catch (const NotRegular& e) {
        return "NotRegular";
    }
}

CaseResult run_case(const Json& c, const std::string& dir) {
    const std::string cmd = c.at("command").get<std::string>();
    const std::string file = dir + "/" + c.at("input").get<std::string>();
    const Json expect = c.at("expect");
    std::string got;
    Json got_json;
    if (cmd == "classify") {
        GroupSpec g = group_from_json(load_json_file(file));
        got = status_of([&] { return classify_main(g); });
    } else if (cmd == "classify-frr") {
        GroupSpec g = group_from_json(load_json_file(file));
        got = status_of([&] { return classify_frr(g); });
    } else if (cmd == "pair-classify") {
        PairSpec p = load_pair_file(file);
        got = status_of([&] { return classify_pair(p); });
    } else if (cmd == "check-m") {
        got = to_string(check_M(group_from_json(load_json_file(file))).status);
    } else if (cmd == "check-ur") {
        got = to_string(check_UR(group_from_json(load_json_file(file))).status);
    } else if (cmd == "spine") {
        got = describe(spine_m(group_from_json(load_json_file(file)), c.at("m").get<std::int64_t>()));
    } else if (cmd == "val") {
        GroupSpec g = group_from_json(load_json_file(file));
        got_json = to_json(val_m(g, element_from_json(g, c.at("element")), c.at("m").get<std::int64_t>()));
        got = got_json.dump();
        return {got_json == expect, got};
    } else if (cmd == "immediate") {
        Json raw = load_json_file(file);
        PairSpec p = load_pair_file(file);
        got = to_string(immediate_ext_check(p, element_from_json(p.H, raw.at("a")), c.value("m", std::int64_t{0})).status);
    } else {
        throw ParseError("unknown corpus command " + cmd);
    }
    return {expect.is_string() && got == expect.get<std::string>(), got};
}

int run_corpus(const std::string& dir) {
    const Json manifest = load_json_file(dir + "/corpus.json");
    note_input(manifest.dump());
    Json rows = Json::array();
    std::size_t passed = 0, width = 4;
    std::vector<std::pair<std::string, CaseResult>> results;
    for (const auto& c : manifest.at("cases")) {
        const std::string name = c.at("name").get<std::string>();
        CaseResult r;
        try {
            r = run_case(c, dir);
        } catch (const std::exception& e) {
            r = {false, std::string("error: ") + e.what()};
        }
        passed += r.pass;
        width = std::max(width, name.size());
        rows.push_back({{"name", name}, {"pass", r.pass}, {"expected", c.at("expect")}, {"got", r.got}});
        results.emplace_back(name, r);
    }
    if (opts.pretty || opts.trace) {
        emit(Json{{"cases", rows}, {"passed", passed}, {"total", results.size()}});
    } else {
        for (const auto& [name, r] : results)
            std::cout << (r.pass ? "PASS " : "FAIL ") << name << std::string(width - name.size() + 2, ' ') << r.got << "\n";
        std::cout << passed << "/" << results.size() << " passed\n";
    }
    return passed == results.size() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"oagkit: ordered abelian groups presented inside Hahn products"};
    app.require_subcommand(1);
    app.add_flag("--json", opts.pretty, "indented JSON output");
    app.add_flag("--trace", opts.trace, "include the reason tree and an input digest");
    std::int64_t bound = 0;
    app.add_option("--bound", bound, "search bound for semi-decisions (overrides OAGKIT_BOUND)")->check(CLI::PositiveNumber);

    std::string group, input, element, text, env_text, kind = "sign";
    std::int64_t m = 2, n = 1, k = 0, extra = 0;
    std::vector<std::int64_t> moduli{2, 3};
    std::function<int()> action;

    auto* skel = app.add_subcommand("skeleton", "archimedean skeleton: spine chain and ribs");
    skel->add_option("group", group)->required();
    skel->callback([&] { action = [&] { emit(to_json(skeleton(load_group(group)))); return 0; }; });

    auto* spine = app.add_subcommand("spine", "the m-spine");
    spine->add_option("m", m)->required()->check(CLI::NonNegativeNumber);
    spine->add_option("group", group)->required();
    spine->callback([&] { action = [&] { emit(to_json(spine_m(load_group(group), m))); return 0; }; });

    auto* val = app.add_subcommand("val", "val^m of an element (m = 0: the natural valuation)");
    val->add_option("m", m)->required()->check(CLI::NonNegativeNumber);
    val->add_option("group", group)->required();
    val->add_option("element", element)->required();
    val->callback([&] {
        action = [&] {
            GroupSpec g = load_group(group);
            GroupElement a = element_from_json(g, json_arg(element));
            emit(Json{{"value", to_json(val_m(g, a, m))}});
            return 0;
        };
    });

    auto* preds = app.add_subcommand("preds", "atomic predicates of an element");
    preds->add_option("group", group)->required();
    preds->add_option("element", element)->required();
    preds->add_option("-m,--moduli", moduli, "moduli for val^m, congruences and the bullet predicates");
    preds->add_option("-k,--max-k", k, "range of k for =*k")->check(CLI::NonNegativeNumber);
    preds->callback([&] {
        action = [&] {
            GroupSpec g = load_group(group);
            GroupElement a = element_from_json(g, json_arg(element));
            Json out{{"positive", g_compare(g, a, g_zero(g)) > 0}, {"val", to_json(nat_val(g, a))}};
            Json per = Json::object();
            for (auto mm : moduli) {
                if (mm < 2) throw CLI::ValidationError("--moduli", "moduli must be >= 2");
                Json cong = Json::array();
                for (std::int64_t r = 1; r < mm; ++r)
                    if (pred_cong_bullet(g, a, mm, r)) cong.push_back(r);
                per[std::to_string(mm)] = {{"val", to_json(val_m(g, a, mm))}, {"in_mG", g_in_mG(g, a, mm).divisible},
                                           {"cong_bullet", cong}};
            }
            out["mod"] = per;
            Json eq = Json::array();
            const std::int64_t kk = k ? k : 3;
            for (std::int64_t r = -kk; r <= kk; ++r)
                if (r && !g_is_zero(g, a) && pred_eq_bullet(g, a, r)) eq.push_back(r);
            out["eq_bullet"] = eq;
            emit(out);
            return 0;
        };
    });

    auto* cls = app.add_subcommand("classify", "stable embeddedness of a group");
    cls->add_option("group", group)->required();
    cls->callback([&] { action = [&] { return emit_verdict(classify_main(load_group(group))); }; });

    auto* frr = app.add_subcommand("classify-frr", "classification for finite regular rank");
    frr->add_option("group", group)->required();
    frr->callback([&] { action = [&] { return emit_verdict(classify_frr(load_group(group))); }; });

    auto* pcls = app.add_subcommand("pair-classify", "stable embeddedness of G in H");
    pcls->add_option("pair", input)->required();
    pcls->callback([&] { action = [&] { return emit_verdict(classify_pair(load_pair(input))); }; });

    auto* cm = app.add_subcommand("check-m", "property (M)");
    cm->add_option("group", group)->required();
    cm->callback([&] {
        action = [&] {
            Bounds b = default_bounds();
            if (bound) b.max_modulus = bound;
            return emit_check(check_M(load_group(group), b));
        };
    });

    auto* cur = app.add_subcommand("check-ur", "property (UR)");
    cur->add_option("group", group)->required();
    cur->callback([&] {
        action = [&] { return emit_check(bound ? check_UR(load_group(group), bound) : check_UR(load_group(group))); };
    });

    auto* pseudo = app.add_subcommand("pseudo", "pseudo-Cauchy test and a pseudo-limit in the Hahn product");
    pseudo->add_option("group", group)->required();
    pseudo->add_option("sequence", text)->required();
    pseudo->add_option("--extra", extra, "terms to expand from the rule")->check(CLI::NonNegativeNumber);
    pseudo->callback([&] {
        action = [&] {
            GroupSpec g = load_group(group);
            PseudoSequence s = with_rule_terms(g, pseudo_from_json(g, json_arg(text)), static_cast<std::size_t>(extra));
            Json out{{"cauchy", cauchy_json(is_pseudo_cauchy(g, s))}};
            try {
                HahnLimit l = hahn_pseudo_limit(g, s);
                Json jl{{"representable", l.representable}};
                if (l.representable) jl["presentation"] = to_json(l.presentation), jl["limit"] = to_json(l.presentation, l.limit);
                if (!l.reason.empty()) jl["reason"] = l.reason;
                out["limit"] = jl;
            } catch (const std::invalid_argument& e) {
                out["limit"] = {{"representable", false}, {"reason", e.what()}};
            }
            emit(out);
            return 0;
        };
    });

    auto* lift = app.add_subcommand("lift", "lift a val^m pseudo-Cauchy sequence to a val pseudo-Cauchy sequence");
    lift->add_option("group", group)->required();
    lift->add_option("sequence", text)->required();
    lift->add_option("--extra", extra, "terms to expand from the rule")->check(CLI::NonNegativeNumber);
    lift->callback([&] {
        action = [&] {
            GroupSpec g = load_group(group);
            PseudoSequence s = with_rule_terms(g, pseudo_from_json(g, json_arg(text)), static_cast<std::size_t>(extra));
            PseudoSequence l = lift_mod_m(g, s);
            emit(Json{{"lift", to_json(g, l)}, {"cauchy", cauchy_json(is_pseudo_cauchy(g, l))}});
            return 0;
        };
    });

    auto* best = app.add_subcommand("best-approx", "a_mn and beta_mn for n a (a from the pair file unless given)");
    best->add_option("pair", input)->required();
    best->add_option("--element", element, "element of H");
    best->add_option("-n", n, "multiplier");
    best->add_option("-m", m, "modulus (0: the natural valuation)")->check(CLI::NonNegativeNumber);
    best->callback([&] {
        action = [&] {
            Json raw;
            PairSpec p = load_pair(input, &raw);
            BestApproximation b = best_approx(p, pair_element(p, raw, element), n, m);
            Json out{{"n", b.n}, {"m", b.m}, {"no_maximum", b.no_maximum}, {"a_mn", to_json(p.G, b.a_mn)}};
            if (b.no_maximum) out["from"] = to_json(b.from), out["tail"] = to_json(b.tail);
            else out["beta"] = to_json(b.beta);
            emit(out);
            return b.no_maximum ? 1 : 0;
        };
    });

    auto* sch = app.add_subcommand("scheme", "defining scheme for a target formula over G");
    sch->add_option("pair", input)->required();
    sch->add_option("--element", element, "element of H");
    sch->add_option("--kind", kind, "sign | cong | eq");
    sch->add_option("-n", n, "multiplier");
    sch->add_option("-m", m, "modulus for cong")->check(CLI::PositiveNumber);
    sch->add_option("-k", k, "residue or offset");
    sch->callback([&] {
        action = [&] {
            Json raw;
            PairSpec p = load_pair(input, &raw);
            GroupElement a = pair_element(p, raw, element);
            try {
                emit(to_json(p, make_scheme(p, a, parse_target(kind, n, m, k))));
                return 0;
            } catch (const NoMaximum& e) {
                emit(Json{{"error", "NoMaximum"}, {"detail", e.what()},
                          {"from", to_json(e.certificate.from)}, {"tail", to_json(e.certificate.tail)}});
                return 1;
            } catch (const RibCutNotDefinable& e) {
                emit(Json{{"error", "RibCutNotDefinable"}, {"detail", e.what()}});
                return 1;
            }
        };
    });

    auto* ev = app.add_subcommand("eval", "evaluate a formula of the language in a group (or in H over a pair)");
    ev->add_option("input", input, "group or pair file")->required();
    ev->add_option("formula", text)->required();
    ev->add_option("--env", env_text, "JSON object: name -> element");
    ev->callback([&] {
        action = [&] {
            Input in = load_input(input);
            Formula f = parse_formula(text);
            Env env;
            if (!env_text.empty()) {
                const Json bindings = json_arg(env_text);
                for (const auto& [name, e] : bindings.items()) env[name] = element_from_json(in.group, e);
            }
            const bool v = eval(in.group, f, env, in.pair ? &*in.pair : nullptr);
            emit(Json{{"formula", print(f)}, {"value", v}});
            return v ? 0 : 1;
        };
    });

    auto* corpus = app.add_subcommand("corpus", "run the example corpus and print a pass/fail table");
    std::string corpus_dir = OAGKIT_DATA_DIR;
    corpus->add_option("dir", corpus_dir, "directory holding corpus.json");
    corpus->callback([&] { action = [&] { return run_corpus(corpus_dir); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kUsage;
    }
    opts.command = app.get_subcommands().front()->get_name();
    if (bound) setenv("OAGKIT_BOUND", std::to_string(bound).c_str(), 1);

    try {
        return action();
    } catch (const CLI::ValidationError& e) {
        std::cerr << "oagkit: " << e.what() << "\n";
        return kUsage;
    } catch (const ParseError& e) {
        std::cerr << "oagkit: " << e.what() << "\n";
        return kUsage;
    } catch (const SyntaxError& e) {
        std::cerr << "oagkit: " << e.what() << "\n";
        return kUsage;
    } catch (const HypothesisViolated& e) {
        emit(Json{{"status", "HypothesisViolated"}, {"detail", e.what()}});
        return 2;
    } catch (const NotFRR& e) {
        emit(Json{{"status", "NotFRR"}, {"detail", e.what()}});
        return 2;
    } catch (const NotRegular& e) {
        emit(Json{{"status", "NotRegular"}, {"detail", e.what()}});
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "oagkit: " << e.what() << "\n";
        return 2;
    }
}
