#include "nacirc/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <sstream>

#include "nacirc/algebra.hpp"
#include "nacirc/error.hpp"
#include "nacirc/hitting.hpp"
#include "nacirc/oracle.hpp"
#include "nacirc/randpit.hpp"
#include "nacirc/verify.hpp"
#include "nacirc/whitebox.hpp"

namespace nacirc {

namespace {

using json = nlohmann::json;

struct Common {
    std::optional<u64> field;
    std::uint64_t seed = 1;
    bool as_json = false;
    std::uint64_t budget = kDefaultCandidateCap;
    std::size_t max_terms = kDefaultTermCap;
};

Circuit load(const std::string& path, const Common& opt) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::InvalidArgument, "cannot read " + path);
    std::ostringstream text;
    text << in.rdbuf();
    Circuit c = parse(text.str());
    if (opt.field && *opt.field != c.p) {
        throw Error(ErrorKind::InvalidArgument, "--field " + std::to_string(*opt.field) + " differs from the file's field " +
                                                    std::to_string(c.p));
    }
    return c;
}

json elem_json(const AlgebraElem& e) { return json{{"d", e.d}, {"body", e.body}, {"scalar", e.scalar}}; }

json point_json(const std::vector<AlgebraElem>& pt) {
    json a = json::array();
    for (const auto& e : pt) a.push_back(elem_json(e));
    return a;
}

void dump_point(std::ostream& out, const std::vector<AlgebraElem>& pt) {
    for (std::size_t i = 0; i < pt.size(); ++i) out << "x" << (i + 1) << " " << dump(pt[i]);
}

std::string format_bound(double b) {
    std::ostringstream o;
    o << std::setprecision(6) << b;
    return o.str();
}

Mode mode_from(const std::string& s) {
    if (s == "comm") return Mode::Comm;
    if (s == "noncomm") return Mode::NonComm;
    throw Error(ErrorKind::BadMode, "mode must be comm or noncomm, got " + s);
}

int cmd_pit_white(const std::string& file, const Common& opt, std::ostream& out) {
    Circuit c = load(file, opt);
    WhiteboxVerdict v = whitebox_pit(c);
    if (opt.as_json) {
        json j{{"result", v.zero ? "ZERO" : "NONZERO"}};
        if (!v.zero) {
            j["witness"] = v.witness_constant ? json{{"constant", v.witness_coeff}}
                                              : json{{"monomial", v.witness.literal()}, {"coefficient", v.witness_coeff}};
        }
        j["stats"] = {{"gates", v.gates}, {"kept", v.kept}, {"candidates", v.candidates}};
        out << j.dump() << "\n";
    } else if (v.zero) {
        out << "ZERO\n";
    } else {
        out << "NONZERO " << (v.witness_constant ? std::string("const") : v.witness.literal()) << "\n";
    }
    return 0;
}

int cmd_pit_random(const std::string& file, const Common& opt, std::optional<int> degree, std::uint64_t set_size,
                   int trials, std::ostream& out) {
    Circuit c = load(file, opt);
    BlackBox bb = blackbox_from_circuit(c, degree ? *degree : -1);
    std::uint64_t queries = 0;
    bb.query_counter = &queries;
    Rng rng(opt.seed);
    RandVerdict v = randomized_pit(bb, iota_set(set_size), trials, rng);
    if (opt.as_json) {
        json j{{"result", v.zero ? "ZERO" : "NONZERO"}};
        if (v.zero) {
            j["bound"] = v.bound;
        } else {
            j["witness"] = {{"point", point_json(v.witness)}};
        }
        j["stats"] = {{"queries", queries}, {"trials", v.trials_run}, {"d", bb.d}};
        out << j.dump() << "\n";
    } else if (v.zero) {
        out << "ZERO p_fail<=" << format_bound(v.bound) << "\n";
    } else {
        out << "NONZERO\n";
    }
    return 0;
}

int cmd_pit_hitting(const std::string& file, const Common& opt, std::optional<int> degree, std::optional<int> depth,
                    std::ostream& out) {
    Circuit c = load(file, opt);
    Circuit sub = extract(c, c.output);
    BlackBox bb = blackbox_from_circuit(c, degree ? *degree : -1);
    HittingBudget budget;
    budget.max_candidates = opt.budget;
    const int delta = depth ? *depth : sub.product_depth();
    DetVerdict v = blackbox_pit_det(bb, sub.size(), delta, budget);
    if (opt.as_json) {
        json j{{"result", v.zero ? "ZERO" : "NONZERO"}};
        if (!v.zero) j["witness"] = {{"point", point_json(v.witness)}};
        j["stats"] = {{"queries", v.queries}, {"size", sub.size()}, {"depth", delta}, {"d", bb.d}};
        out << j.dump() << "\n";
    } else if (v.zero) {
        out << "ZERO\n";
    } else {
        out << "NONZERO\n";
        dump_point(out, v.witness);
    }
    return 0;
}

int cmd_expand(const std::string& file, const Common& opt, std::ostream& out) {
    Circuit c = load(file, opt);
    Poly f = expand(c, opt.max_terms);
    if (opt.as_json) {
        json terms = json::array();
        for (const auto& [m, co] : f.terms) terms.push_back({{"monomial", m.literal()}, {"coefficient", co}});
        out << json{{"terms", terms}, {"constant", f.constant}}.dump() << "\n";
    } else {
        out << poly_to_text(f);
    }
    return 0;
}

int cmd_gen(const Common& opt, int n, int size, int degree, const std::string& mode, std::ostream& out) {
    const u64 p = opt.field ? *opt.field : kDefaultPrime;
    field_new(p);
    Circuit c = gen_random(n, size, degree, mode_from(mode), opt.seed, p);
    if (opt.as_json) {
        out << json{{"circuit", serialize(c)}}.dump() << "\n";
    } else {
        out << serialize(c);
    }
    return 0;
}

int cmd_hitting_dump(const Common& opt, int n, int size, int degree, int depth, const std::string& mode,
                     std::ostream& out) {
    const Field F = field_new(opt.field ? *opt.field : kDefaultPrime);
    mode_from(mode);
    HittingBudget budget;
    budget.max_candidates = opt.budget;
    std::uint64_t k = 0;
    json all = json::array();
    for_each_nonassoc_point(n, size, degree, depth, F, budget, [&](const std::vector<AlgebraElem>& pt) {
        if (opt.as_json) {
            all.push_back(point_json(pt));
        } else {
            out << "point " << k << "\n";
            dump_point(out, pt);
        }
        ++k;
        return true;
    });
    if (opt.as_json) {
        out << json{{"points", all}, {"count", k}}.dump() << "\n";
    }
    return 0;
}

int cmd_verify(const Common& opt, const std::string& corpus, bool inject_fault, std::ostream& out) {
    VerifyOptions vo;
    vo.corpus = parse_corpus(corpus);
    vo.seed = opt.seed;
    vo.p = field_new(opt.field ? *opt.field : kDefaultPrime).p();
    vo.budget.max_candidates = opt.budget;
    vo.whitebox.naive_duplicate_split = inject_fault;
    VerifyReport rep = verify_suite(vo, [&](const CriterionResult& r) {
        if (!opt.as_json) out << format_result(r) << "\n";
    });
    if (opt.as_json) {
        json crit = json::array();
        for (const auto& r : rep.criteria) {
            crit.push_back({{"id", r.id},
                            {"name", r.name},
                            {"pass", r.pass},
                            {"checked", r.checked},
                            {"failed", r.failed},
                            {"capped", r.capped},
                            {"detail", r.detail}});
        }
        out << json{{"corpus", corpus}, {"seed", opt.seed}, {"field", vo.p}, {"all_pass", rep.all_pass()}, {"criteria", crit}}
                   .dump()
            << "\n";
    } else {
        std::size_t passed = 0;
        for (const auto& r : rep.criteria) passed += r.pass;
        out << passed << "/" << rep.criteria.size() << " criteria passed\n";
    }
    return rep.all_pass() ? 0 : 1;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Identity testing for nonassociative arithmetic circuits", "nacirc"};
    app.require_subcommand(1);

    Common opt;
    u64 field_value = 0;
    std::uint64_t budget = kDefaultCandidateCap;
    std::size_t max_terms = kDefaultTermCap;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--field", field_value, "prime modulus");
        sub->add_option("--seed", opt.seed, "random seed");
        sub->add_flag("--json", opt.as_json, "machine readable output");
        sub->add_option("--budget", budget, "maximum number of weight candidates");
        sub->add_option("--max-terms", max_terms, "term cap for brute-force expansion");
    };

    std::string file, mode = "comm", corpus = "small";
    int depth_v = 0, degree_v = 0, trials = 10, n = 3, size = 10;
    std::uint64_t set_size = 1000;
    bool inject_fault = false;

    auto* white = app.add_subcommand("pit-white", "deterministic white-box test");
    white->add_option("file", file)->required();
    add_common(white);

    auto* random = app.add_subcommand("pit-random", "randomized black-box test over A_d or C_d");
    random->add_option("file", file)->required();
    random->add_option("--set-size", set_size, "sample set {0..k-1}");
    random->add_option("--trials", trials, "independent trials");
    auto* rdeg = random->add_option("--degree", degree_v, "degree bound (default: syntactic degree)");
    add_common(random);

    auto* hit = app.add_subcommand("pit-hitting", "deterministic black-box test on the hitting set");
    hit->add_option("file", file)->required();
    auto* hdepth = hit->add_option("--depth", depth_v, "product depth bound (default: the circuit's)");
    auto* hdeg = hit->add_option("--degree", degree_v, "degree bound (default: syntactic degree)");
    add_common(hit);

    auto* exp = app.add_subcommand("expand", "brute-force expansion");
    exp->add_option("file", file)->required();
    add_common(exp);

    auto* gen = app.add_subcommand("gen", "seeded random circuit");
    gen->add_option("--n", n, "number of variables");
    gen->add_option("--size", size, "number of gates");
    gen->add_option("--degree", degree_v, "syntactic degree cap")->default_val(4);
    gen->add_option("--mode", mode, "comm or noncomm");
    add_common(gen);

    auto* dumpc = app.add_subcommand("hitting-dump", "list the hitting set points");
    dumpc->add_option("--n", n, "number of variables")->required();
    dumpc->add_option("--size", size, "circuit size bound")->required();
    dumpc->add_option("--degree", degree_v, "degree bound")->required();
    dumpc->add_option("--depth", depth_v, "product depth bound")->required();
    dumpc->add_option("--mode", mode, "comm or noncomm");
    add_common(dumpc);

    auto* ver = app.add_subcommand("verify", "run the acceptance suite");
    ver->add_option("--corpus", corpus, "small or full");
    ver->add_flag("--inject-duplicate-split-fault", inject_fault, "use the uncorrected product rule in the white-box test");
    add_common(ver);

    std::vector<std::string> argv_store;
    argv_store.push_back("nacirc");
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& s : argv_store) argv.push_back(s.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return 0;
        }
        err << "error: " << e.what() << "\n";
        return 2;
    }

    if (field_value != 0) opt.field = field_value;
    opt.budget = budget;
    opt.max_terms = max_terms;
    std::optional<int> degree, depth;

    try {
        if (*white) return cmd_pit_white(file, opt, out);
        if (*random) {
            if (rdeg->count()) degree = degree_v;
            return cmd_pit_random(file, opt, degree, set_size, trials, out);
        }
        if (*hit) {
            if (hdeg->count()) degree = degree_v;
            if (hdepth->count()) depth = depth_v;
            return cmd_pit_hitting(file, opt, degree, depth, out);
        }
        if (*exp) return cmd_expand(file, opt, out);
        if (*gen) return cmd_gen(opt, n, size, degree_v, mode, out);
        if (*dumpc) return cmd_hitting_dump(opt, n, size, degree_v, depth_v, mode, out);
        if (*ver) return cmd_verify(opt, corpus, inject_fault, out);
    } catch (const Error& e) {
        if (opt.as_json) {
            out << json{{"error", error_kind_name(e.kind())}, {"message", e.what()}}.dump() << "\n";
        }
        err << "error: " << error_kind_name(e.kind()) << ": " << e.what();
        if (e.line() > 0) err << " (line " << e.line() << ")";
        err << "\n";
        return exit_code_for(e.kind());
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}

}  // namespace nacirc
