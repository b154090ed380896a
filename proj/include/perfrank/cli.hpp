#pragma once

// Command-line front end.  Subcommands operate on a JSON workspace of named
// algebras, homs, modules, complexes, chain maps and matrices; `example`
// runs one of the bundled self-checking workspaces.
//
// Exit codes: 0 success / all checks pass, 1 a check failed, 2 input error.

#include <CLI11.hpp>

#include "fixtures.hpp"
#include "workspace.hpp"

namespace perfrank::cli {

using jsonio::Json;

struct Options {
    std::string workspace_path;
    bool json_output = false;
    std::optional<Period> period;
    std::optional<int> depth;
    std::optional<int> samples;
    std::optional<std::uint64_t> seed;
};

namespace cli_detail {

inline Period period_or_default(const Options& opt, const Workspace& ws) {
    return opt.period ? *opt.period : ws.defaults.period;
}
inline int depth_or_default(const Options& opt, const Workspace& ws) {
    return opt.depth ? *opt.depth : ws.defaults.depth;
}
inline int samples_or_default(const Options& opt, const Workspace& ws) {
    return opt.samples ? *opt.samples : ws.defaults.samples;
}
inline std::uint64_t seed_or_default(const Options& opt, const Workspace& ws) {
    return opt.seed ? *opt.seed : ws.defaults.seed;
}

inline void emit(std::ostream& out, const Options& opt, const Json& report, const std::string& human) {
    if (opt.json_output)
        out << report.dump(2) << "\n";
    else
        out << human;
}

inline std::string poly_str(const CoeffPoly& p) { return p.str(); }

// ---- rank ----

inline int cmd_rank(std::ostream& out, const Options& opt, const Workspace& ws, const std::string& kind,
                    const std::string& complex_name, const std::string& map_name,
                    const std::string& module_name, const std::string& hom_name) {
    SylvesterRank sigma(ws.hom(hom_name));
    Period d = period_or_default(opt, ws);
    Json rep;
    rep["command"] = "rank";
    rep["kind"] = kind;
    rep["hom"] = hom_name;
    rep["period"] = jsonio::period_to_json(d);
    std::ostringstream human;

    if (kind == "object") {
        const ComplexEntry& entry = ws.complex(complex_name);
        CoeffPoly r = entry.idempotent
                          ? idempotent_rank(sigma, IdempotentObject(entry.complex, *entry.idempotent), d)
                          : derived_object_rank(sigma, entry.complex).reduced_to(d);
        rep["object"] = complex_name;
        rep["summand"] = entry.idempotent.has_value();
        rep["rank"] = jsonio::coeffpoly_to_json(r);
        human << "rank object " << complex_name << " under " << hom_name << " at period " << d.str() << ": "
              << poly_str(r) << "\n";
    } else if (kind == "morphism") {
        CoeffPoly r = derived_morphism_rank(sigma, ws.chain_map(map_name), d);
        rep["morphism"] = map_name;
        rep["rank"] = jsonio::coeffpoly_to_json(r);
        human << "rank morphism " << map_name << " under " << hom_name << " at period " << d.str() << ": "
              << poly_str(r) << "\n";
    } else if (kind == "module") {
        Rational r = sylvester_module_rank(sigma, ws.module(module_name));
        rep["module"] = module_name;
        rep["rank"] = jsonio::rational_to_json(r);
        human << "rank module " << module_name << " under " << hom_name << ": " << r.str() << "\n";
    } else if (kind == "idempotent") {
        const ComplexEntry& entry = ws.complex(complex_name);
        if (!entry.idempotent)
            throw std::invalid_argument("complex '" + complex_name + "' carries no idempotent");
        CoeffPoly r = idempotent_rank(sigma, IdempotentObject(entry.complex, *entry.idempotent), d);
        rep["object"] = complex_name;
        rep["rank"] = jsonio::coeffpoly_to_json(r);
        human << "rank idempotent " << complex_name << " under " << hom_name << " at period " << d.str()
              << ": " << poly_str(r) << "\n";
    } else {
        throw std::invalid_argument("rank kind must be object|morphism|module|idempotent");
    }
    emit(out, opt, rep, human.str());
    return 0;
}

// ---- classify ----

inline int cmd_classify(std::ostream& out, const Options& opt, const Workspace& ws,
                        const std::string& complex_name, const std::string& map_name,
                        const std::string& hom_name) {
    SylvesterRank sigma(ws.hom(hom_name));
    Period d = period_or_default(opt, ws);
    Json rep;
    rep["command"] = "classify";
    rep["hom"] = hom_name;
    rep["period"] = jsonio::period_to_json(d);
    std::ostringstream human;

    if (!complex_name.empty()) {
        const ComplexEntry& entry = ws.complex(complex_name);
        ObjectClassification cls =
            entry.idempotent ? classify_object(sigma, IdempotentObject(entry.complex, *entry.idempotent), d)
                             : classify_object(sigma, entry.complex, d);
        rep["object"] = complex_name;
        rep["rank"] = jsonio::coeffpoly_to_json(cls.rank);
        rep["in_kernel"] = cls.in_kernel;
        human << "object " << complex_name << " under " << hom_name << ": rank " << poly_str(cls.rank) << ", "
              << (cls.in_kernel ? "in kernel" : "not in kernel") << "\n";
    } else {
        MorphismClassification cls = classify_morphism(sigma, ws.chain_map(map_name), d);
        rep["morphism"] = map_name;
        rep["rank"] = jsonio::coeffpoly_to_json(cls.rank_map);
        rep["rank_source"] = jsonio::coeffpoly_to_json(cls.rank_source);
        rep["rank_target"] = jsonio::coeffpoly_to_json(cls.rank_target);
        rep["left_full"] = cls.left_full;
        rep["right_full"] = cls.right_full;
        rep["full"] = cls.full;
        human << "morphism " << map_name << " under " << hom_name << ": rank " << poly_str(cls.rank_map)
              << (cls.full ? ", full" : (cls.left_full ? ", left full" : (cls.right_full ? ", right full" : ", not full")))
              << "\n";
    }
    emit(out, opt, rep, human.str());
    return 0;
}

// ---- axioms ----

inline int cmd_axioms(std::ostream& out, const Options& opt, const Workspace& ws, const std::string& hom_name,
                      const std::string& suite) {
    SylvesterRank sigma(ws.hom(hom_name));
    Period d = period_or_default(opt, ws);
    SampleConfig cfg;
    cfg.samples = samples_or_default(opt, ws);
    cfg.seed = seed_or_default(opt, ws);

    Json rep;
    rep["command"] = "axioms";
    rep["hom"] = hom_name;
    rep["suite"] = suite;
    rep["period"] = jsonio::period_to_json(d);
    rep["samples"] = cfg.samples;
    rep["seed"] = cfg.seed;

    std::vector<std::pair<std::string, AxiomReport>> runs;
    if (suite == "rank" || suite == "all") runs.emplace_back("rank", check_rank_axioms(sigma, d, cfg));
    if (suite == "sylvester" || suite == "all") runs.emplace_back("sylvester", check_sylvester_axioms(sigma, cfg));
    if (suite == "lemmas" || suite == "all") runs.emplace_back("lemmas", check_lemma_suite(sigma, d, cfg));
    if (runs.empty()) throw std::invalid_argument("suite must be rank|sylvester|lemmas|all");

    bool all_ok = true;
    std::ostringstream human;
    Json suites = Json::object();
    for (const auto& [name, r] : runs) {
        suites[name] = jsonio::axiom_report_to_json(r);
        all_ok = all_ok && r.all_passed();
        for (const auto& c : r.checks) {
            human << (c.passed() ? "pass" : "FAIL") << "  " << name << "/" << c.name << "  (" << c.checked
                  << " samples";
            if (!c.passed()) human << ", " << c.failed << " failures, first: " << c.first_counterexample;
            human << ")\n";
        }
    }
    rep["suites"] = suites;
    rep["all_passed"] = all_ok;
    human << (all_ok ? "all axiom checks passed\n" : "axiom checks FAILED\n");
    emit(out, opt, rep, human.str());
    return all_ok ? 0 : 1;
}

// ---- tor ----

inline int cmd_tor(std::ostream& out, const Options& opt, const Workspace& ws, const std::string& right_name,
                   const std::string& left_name) {
    int depth = depth_or_default(opt, ws);
    auto dims = tor_dims(ws.module(right_name), ws.module(left_name), depth);
    Json rep;
    rep["command"] = "tor";
    rep["right"] = right_name;
    rep["left"] = left_name;
    rep["depth"] = depth;
    rep["dims"] = dims;
    std::ostringstream human;
    human << "Tor(" << right_name << ", " << left_name << ") dims 0.." << depth << ":";
    for (int v : dims) human << " " << v;
    human << "\n";
    emit(out, opt, rep, human.str());
    return 0;
}

// ---- epicheck ----

inline int cmd_epicheck(std::ostream& out, const Options& opt, const Workspace& ws, const std::string& hom_name) {
    int depth = depth_or_default(opt, ws);
    EpiCheckReport r = homological_epi_check(ws.hom(hom_name), depth);
    Json rep;
    rep["command"] = "epicheck";
    rep["hom"] = hom_name;
    rep["report"] = jsonio::epi_report_to_json(r);
    std::ostringstream human;
    human << "epicheck " << hom_name << ": tensor_dim=" << r.tensor_dimension << ", multiplication "
          << (r.mult_bijective ? "bijective" : "NOT bijective") << ", Tor(1.." << depth << ") =";
    for (int v : r.tor_vanishing) human << " " << v;
    human << (r.passes ? "; passes to depth " + std::to_string(depth)
                       : "; FAILS" + (r.first_obstruction ? " at Tor_" + std::to_string(r.first_obstruction) : ""))
          << "\n";
    emit(out, opt, rep, human.str());
    return r.passes ? 0 : 1;
}

// ---- localizing ----

inline int cmd_localizing(std::ostream& out, const Options& opt, const Workspace& ws,
                          const std::string& hom_name) {
    int depth = depth_or_default(opt, ws);
    LocalizingReport r = localizing_diagnostic(SylvesterRank(ws.hom(hom_name)), depth,
                                               std::min(25, samples_or_default(opt, ws)),
                                               seed_or_default(opt, ws));
    Json rep;
    rep["command"] = "localizing";
    rep["hom"] = hom_name;
    rep["report"] = jsonio::localizing_report_to_json(r);
    std::ostringstream human;
    human << "localizing " << hom_name << ": ";
    if (r.consistent) {
        human << "consistent with localizing to depth " << depth << "\n";
    } else if (r.multiplication_obstructed) {
        human << "not localizing (multiplication not bijective)\n";
    } else if (r.obstruction_degree > 0) {
        human << "not localizing (Tor obstruction at degree " << r.obstruction_degree << ")\n";
    } else {
        human << "not consistent (normalization or integrality failed)\n";
    }
    emit(out, opt, rep, human.str());
    return r.consistent ? 0 : 1;
}

// ---- submatrix ----

inline int cmd_submatrix(std::ostream& out, const Options& opt, const Workspace& ws,
                         const std::string& matrix_name, const std::string& hom_name) {
    SylvesterRank sigma(ws.hom(hom_name));
    SubmatrixWitness w = full_square_submatrix(sigma, ws.matrix(matrix_name));
    Json rep;
    rep["command"] = "submatrix";
    rep["matrix"] = matrix_name;
    rep["hom"] = hom_name;
    rep["rank"] = jsonio::rational_to_json(w.rank_value);
    rep["on_base_change"] = w.on_base_change;
    rep["rows"] = w.row_set;
    rep["cols"] = w.col_set;
    std::ostringstream human;
    human << "full square submatrix of " << matrix_name << " under " << hom_name << ": rank "
          << w.rank_value.str() << ", size " << w.row_set.size() << "x" << w.col_set.size()
          << (w.on_base_change ? " (in the base-changed matrix)" : "") << ", rows {";
    for (std::size_t i = 0; i < w.row_set.size(); ++i) human << (i ? "," : "") << w.row_set[i];
    human << "} cols {";
    for (std::size_t i = 0; i < w.col_set.size(); ++i) human << (i ? "," : "") << w.col_set[i];
    human << "}\n";
    emit(out, opt, rep, human.str());
    return 0;
}

// ---- bundled examples ----

inline int cmd_example(std::ostream& out, const Options& opt, const std::string& name) {
    auto load_fixture = [](const std::string& fixture) {
        return load_workspace_string(fixtures::workspaces().at(fixture));
    };

    Options local = opt;
    if (name == "smallexample-m2") {
        Workspace ws = load_fixture("smallexample");
        return cmd_localizing(out, local, ws, "loc-m2");
    }
    if (name == "smallexample-aug") {
        Workspace ws = load_fixture("smallexample");
        // the expected outcome IS the Tor_2 obstruction; finding it is a pass
        int depth = depth_or_default(local, ws);
        LocalizingReport r = localizing_diagnostic(SylvesterRank(ws.hom("aug")), depth, 25, ws.defaults.seed);
        Json rep;
        rep["command"] = "example";
        rep["name"] = name;
        rep["report"] = jsonio::localizing_report_to_json(r);
        bool expected = !r.consistent && r.obstruction_degree == 2;
        rep["expected_obstruction_found"] = expected;
        std::ostringstream human;
        human << "localizing aug: "
              << (r.consistent ? "consistent (UNEXPECTED)"
                               : "not localizing (Tor obstruction at degree " +
                                     std::to_string(r.obstruction_degree) + ")")
              << (expected ? " -- as expected\n" : " -- UNEXPECTED\n");
        emit(out, local, rep, human.str());
        return expected ? 0 : 1;
    }
    if (name == "fiedorowicz") {
        Workspace ws = load_fixture("fiedorowicz");
        int depth = depth_or_default(local, ws);
        auto dims = tor_dims(ws.module("k"), ws.module("k-left"), depth);
        Json rep;
        rep["command"] = "example";
        rep["name"] = name;
        rep["depth"] = depth;
        rep["dims"] = dims;
        bool expected = depth == 4 && dims == std::vector<int>{1, 0, 1, 0, 0};
        rep["matches_two_sphere"] = expected;
        std::ostringstream human;
        human << "Tor(k, k) over the 5-dimensional monoid algebra, dims 0.." << depth << ":";
        for (int v : dims) human << " " << v;
        human << (expected ? "  (the homology of the 2-sphere)\n" : "  (UNEXPECTED)\n");
        emit(out, local, rep, human.str());
        return expected ? 0 : 1;
    }
    if (name == "dualnumbers") {
        Workspace ws = load_fixture("dualnumbers");
        const AlgebraRef& dual = ws.algebra("dual");
        RadicalInfo rad = radical_and_residue(dual);
        SylvesterRank res(ws.hom("residue"));
        Rational jordan_rank = local_matrix_rank(rad, ws.matrix("jordan"));
        bool agree = true;
        Rng rng(ws.defaults.seed);
        for (int i = 0; i < 50; ++i) {
            MatrixOverA m = sampling::random_matrix(rng, dual, static_cast<int>(1 + rng.below(4)),
                                                    static_cast<int>(1 + rng.below(4)));
            if (local_matrix_rank(rad, m) != sylvester_morphism_rank(res, m)) agree = false;
        }
        Json rep;
        rep["command"] = "example";
        rep["name"] = name;
        rep["radical_dim"] = rad.radical_basis.size();
        rep["is_local"] = rad.is_local;
        rep["jordan_rank"] = jsonio::rational_to_json(jordan_rank);
        rep["residue_rank_agrees"] = agree;
        bool ok = rad.is_local && rad.radical_basis.size() == 1 && jordan_rank == Rational(1) && agree;
        rep["passes"] = ok;
        std::ostringstream human;
        human << "dual numbers: radical dim " << rad.radical_basis.size() << ", "
              << (rad.is_local ? "local" : "NOT local") << "; rank of the jordan matrix over the residue field: "
              << jordan_rank.str() << "; local rank vs residue hom on 50 samples: "
              << (agree ? "agree" : "DISAGREE") << "\n";
        emit(out, local, rep, human.str());
        return ok ? 0 : 1;
    }
    throw std::invalid_argument("unknown example '" + name +
                                "'; available: smallexample-m2 smallexample-aug fiedorowicz dualnumbers");
}

} // namespace cli_detail

inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact rank functions on perfect complexes of finite-dimensional algebras"};
    app.require_subcommand(1);

    Options opt;
    std::string period_str;
    app.add_option("--workspace", opt.workspace_path, "workspace JSON file");
    app.add_flag("--json", opt.json_output, "emit a JSON report");
    app.add_option("--period", period_str, "coefficient period: a positive integer or 'inf'");
    int depth_val = -1;
    app.add_option("--depth", depth_val, "Tor/epi check depth");
    int samples_val = -1;
    app.add_option("--samples", samples_val, "sample count for randomized checks");
    std::int64_t seed_val = -1;
    app.add_option("--seed", seed_val, "seed for randomized checks");

    std::string rank_kind, complex_name, map_name, module_name, hom_name, suite = "all";
    std::string right_name, left_name, matrix_name, example_name;

    CLI::App* rank_cmd = app.add_subcommand("rank", "rank of an object, morphism, module or idempotent");
    rank_cmd->fallthrough();
    rank_cmd->add_option("kind", rank_kind, "object|morphism|module|idempotent")->required();
    rank_cmd->add_option("--complex", complex_name);
    rank_cmd->add_option("--map", map_name);
    rank_cmd->add_option("--module", module_name);
    rank_cmd->add_option("--hom", hom_name)->required();

    CLI::App* classify_cmd = app.add_subcommand("classify", "fullness / kernel classification");
    classify_cmd->fallthrough();
    classify_cmd->add_option("--complex", complex_name);
    classify_cmd->add_option("--map", map_name);
    classify_cmd->add_option("--hom", hom_name)->required();

    CLI::App* axioms_cmd = app.add_subcommand("axioms", "run the axiom property suites");
    axioms_cmd->fallthrough();
    axioms_cmd->add_option("--hom", hom_name)->required();
    axioms_cmd->add_option("--suite", suite, "rank|sylvester|lemmas|all");

    CLI::App* tor_cmd = app.add_subcommand("tor", "Tor dimension sequence of two modules");
    tor_cmd->fallthrough();
    tor_cmd->add_option("--right", right_name)->required();
    tor_cmd->add_option("--left", left_name)->required();

    CLI::App* epi_cmd = app.add_subcommand("epicheck", "homological epimorphism certificate");
    epi_cmd->fallthrough();
    epi_cmd->add_option("--hom", hom_name)->required();

    CLI::App* loc_cmd = app.add_subcommand("localizing", "localizing rank function diagnostic");
    loc_cmd->fallthrough();
    loc_cmd->add_option("--hom", hom_name)->required();

    CLI::App* sub_cmd = app.add_subcommand("submatrix", "full square submatrix witness");
    sub_cmd->fallthrough();
    sub_cmd->add_option("--matrix", matrix_name)->required();
    sub_cmd->add_option("--hom", hom_name)->required();

    CLI::App* ex_cmd = app.add_subcommand("example", "run a bundled example");
    ex_cmd->fallthrough();
    ex_cmd->add_option("name", example_name, "smallexample-m2|smallexample-aug|fiedorowicz|dualnumbers")
        ->required();

    std::vector<const char*> argv;
    argv.push_back("perfrank");
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            // --help and friends
            out << app.help();
            return 0;
        }
        err << "argument error: " << e.what() << "\n";
        return 2;
    }

    if (!period_str.empty()) {
        try {
            opt.period = jsonio::period_from_json(period_str == "inf" ? jsonio::Json("inf")
                                                                      : jsonio::Json(std::stoll(period_str)));
        } catch (const std::exception&) {
            err << "argument error: bad --period '" << period_str << "'\n";
            return 2;
        }
    }
    if (depth_val >= 0) opt.depth = depth_val;
    if (samples_val >= 0) opt.samples = samples_val;
    if (seed_val >= 0) opt.seed = static_cast<std::uint64_t>(seed_val);

    try {
        if (ex_cmd->parsed()) return cli_detail::cmd_example(out, opt, example_name);

        if (opt.workspace_path.empty()) {
            err << "input error: --workspace is required for this command\n";
            return 2;
        }
        Workspace ws = load_workspace_file(opt.workspace_path);

        if (rank_cmd->parsed())
            return cli_detail::cmd_rank(out, opt, ws, rank_kind, complex_name, map_name, module_name, hom_name);
        if (classify_cmd->parsed()) {
            if (complex_name.empty() == map_name.empty()) {
                err << "input error: classify needs exactly one of --complex or --map\n";
                return 2;
            }
            return cli_detail::cmd_classify(out, opt, ws, complex_name, map_name, hom_name);
        }
        if (axioms_cmd->parsed()) return cli_detail::cmd_axioms(out, opt, ws, hom_name, suite);
        if (tor_cmd->parsed()) return cli_detail::cmd_tor(out, opt, ws, right_name, left_name);
        if (epi_cmd->parsed()) return cli_detail::cmd_epicheck(out, opt, ws, hom_name);
        if (loc_cmd->parsed()) return cli_detail::cmd_localizing(out, opt, ws, hom_name);
        if (sub_cmd->parsed()) return cli_detail::cmd_submatrix(out, opt, ws, matrix_name, hom_name);
        err << "input error: no subcommand\n";
        return 2;
    } catch (const WorkspaceError& e) {
        err << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "input error: " << e.what() << "\n";
        return 2;
    }
}

} // namespace perfrank::cli
