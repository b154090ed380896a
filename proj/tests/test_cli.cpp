#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include <perfrank/cli.hpp>

using namespace perfrank;
using jsonio::Json;

namespace {

struct CliResult {
    int code;
    std::string out;
    std::string err;
};

CliResult run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = cli::run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

// write a temp workspace file and return its path
std::string temp_workspace(const std::string& text, const std::string& tag) {
    std::string path = "/tmp/perfrank_test_" + tag + ".json";
    std::ofstream f(path);
    f << text;
    return path;
}

const std::string& small_path() {
    static std::string p = temp_workspace(fixtures::smallexample_json, "small");
    return p;
}

} // namespace

TEST_CASE("bundled fixtures parse and expose the documented contents") {
    Workspace ws = load_workspace_string(fixtures::smallexample_json);
    CHECK(ws.algebras.size() == 1);
    CHECK(ws.homs.size() == 2);
    CHECK(ws.modules.size() == 4);
    CHECK(ws.complexes.size() == 3);
    CHECK(ws.complexes.at("twoterm-alpha2").idempotent.has_value());
    CHECK_FALSE(ws.complexes.at("twoterm-alpha2-free").idempotent.has_value());
    CHECK(ws.defaults.depth == 6);
    CHECK(ws.defaults.period.is_infinite());

    Workspace fied = load_workspace_string(fixtures::fiedorowicz_json);
    CHECK(fied.algebra("kM")->dim == 5);
    Workspace dual = load_workspace_string(fixtures::dualnumbers_json);
    CHECK(dual.algebra("dual")->dim == 2);
}

TEST_CASE("embedded fixtures match the files shipped in fixtures/") {
    for (auto [name, text] : std::map<std::string, const char*>{
             {"smallexample", fixtures::smallexample_json},
             {"fiedorowicz", fixtures::fiedorowicz_json},
             {"dualnumbers", fixtures::dualnumbers_json}}) {
        std::ifstream f(std::string(FIXTURE_DIR) + "/" + name + ".json");
        REQUIRE(f.good());
        std::stringstream buf;
        buf << f.rdbuf();
        CHECK(buf.str() == std::string(text));
    }
}

TEST_CASE("workspace validation enumerates every failing invariant") {
    // a schema-valid workspace with a non-associative algebra (unit laws
    // intact, (a a) a != a (a a)) AND an unresolved reference: both problems
    // are reported together, and the associativity error names the triple
    std::string bad = R"({
      "algebras": {
        "broken": {
          "field": "Q",
          "basis": ["e", "a", "b"],
          "unit": ["1", "0", "0"],
          "products": [[0,0,0,"1"],[0,1,1,"1"],[0,2,2,"1"],
                       [1,0,1,"1"],[2,0,2,"1"],
                       [1,1,2,"1"],[2,1,1,"1"]]
        }
      },
      "homs": {
        "dangling": {"algebra": "nonexistent", "n": 1, "images": {}}
      }
    })";
    try {
        load_workspace_string(bad);
        FAIL("expected WorkspaceError");
    } catch (const WorkspaceError& e) {
        REQUIRE(e.problems().size() == 2);
        CHECK(e.problems()[0].find("broken") != std::string::npos);
        CHECK(e.problems()[0].find("triple (a, a, a)") != std::string::npos);
        CHECK(e.problems()[1].find("dangling") != std::string::npos);
        CHECK(e.problems()[1].find("nonexistent") != std::string::npos);
    }

    CHECK_THROWS_AS(load_workspace_string(""), WorkspaceError);   // empty file: parse error
    CHECK_THROWS_AS(load_workspace_string("{"), WorkspaceError);  // malformed JSON
}

TEST_CASE("workspace validation names violated hom constraints and bad differentials") {
    std::string bad_hom = R"({
      "algebras": {"k2": {"field": "Q", "basis": ["e", "a"], "unit": ["1","0"],
                   "products": [[0,0,0,"1"],[0,1,1,"1"],[1,0,1,"1"]]}},
      "homs": {"notmult": {"algebra": "k2", "n": 1, "images": {"e": [["1"]], "a": [["1"]]}}}
    })";
    // a*a = 0 but image 1*1 = 1
    try {
        load_workspace_string(bad_hom);
        FAIL("expected WorkspaceError");
    } catch (const WorkspaceError& e) {
        REQUIRE(e.problems().size() == 1);
        CHECK(e.problems()[0].find("notmult") != std::string::npos);
        CHECK(e.problems()[0].find("verification") != std::string::npos);
    }

    std::string bad_complex = R"({
      "algebras": {"k": {"field": "Q", "basis": ["e"], "unit": ["1"], "products": [[0,0,0,"1"]]}},
      "complexes": {"notsquarezero": {
        "algebra": "k",
        "degrees": [{"n": 2, "rank": 1}, {"n": 1, "rank": 1}, {"n": 0, "rank": 1}],
        "differentials": {"2": [[["1"]]], "1": [[["1"]]]}
      }}
    })";
    try {
        load_workspace_string(bad_complex);
        FAIL("expected WorkspaceError");
    } catch (const WorkspaceError& e) {
        REQUIRE(e.problems().size() == 1);
        CHECK(e.problems()[0].find("notsquarezero") != std::string::npos);
    }
}

TEST_CASE("rank subcommands against the bundled workspace") {
    auto r1 = run({"rank", "object", "--complex", "twoterm-alpha2", "--hom", "loc-m2", "--workspace", small_path()});
    CHECK(r1.code == 0);
    CHECK(r1.out.find(": 0\n") != std::string::npos);

    auto r2 = run({"rank", "object", "--complex", "twoterm-alpha2-free", "--hom", "loc-m2", "--workspace", small_path()});
    CHECK(r2.code == 0);
    CHECK(r2.out.find("1/2 + 1/2*q") != std::string::npos);

    auto r3 = run({"rank", "morphism", "--map", "alpha2-endo", "--hom", "loc-m2", "--workspace", small_path()});
    CHECK(r3.code == 0);
    CHECK(r3.out.find(": 1/2") != std::string::npos);

    auto r4 = run({"rank", "module", "--module", "S2", "--hom", "loc-m2", "--workspace", small_path()});
    CHECK(r4.code == 0);
    CHECK(r4.out.find(": 1/2") != std::string::npos);

    auto r5 = run({"rank", "idempotent", "--complex", "twoterm-alpha2", "--hom", "aug", "--workspace", small_path()});
    CHECK(r5.code == 0);
    CHECK(r5.out.find(": 1\n") != std::string::npos);

    // period flag: reduction to d = 1
    auto r6 = run({"rank", "object", "--complex", "twoterm-alpha2-free", "--hom", "loc-m2", "--period", "1",
                   "--workspace", small_path()});
    CHECK(r6.code == 0);
    CHECK(r6.out.find(": 1\n") != std::string::npos);

    // even periods are a precondition violation -> input error
    auto r7 = run({"rank", "morphism", "--map", "alpha2-endo", "--hom", "loc-m2", "--period", "2",
                   "--workspace", small_path()});
    CHECK(r7.code == 2);
    CHECK(r7.err.find("period") != std::string::npos);
}

TEST_CASE("classify subcommand") {
    auto r1 = run({"classify", "--complex", "twoterm-alpha2", "--hom", "loc-m2", "--workspace", small_path()});
    CHECK(r1.code == 0);
    CHECK(r1.out.find("in kernel") != std::string::npos);

    auto r2 = run({"classify", "--complex", "twoterm-alpha2", "--hom", "aug", "--workspace", small_path()});
    CHECK(r2.code == 0);
    CHECK(r2.out.find("not in kernel") != std::string::npos);

    auto r3 = run({"classify", "--map", "alpha2-endo", "--hom", "loc-m2", "--workspace", small_path()});
    CHECK(r3.code == 0);
    CHECK(r3.out.find("not full") != std::string::npos);

    auto r4 = run({"classify", "--hom", "loc-m2", "--workspace", small_path()});
    CHECK(r4.code == 2);
}

TEST_CASE("tor, epicheck and localizing subcommands with exit codes") {
    auto tor = run({"tor", "--right", "S1", "--left", "S1-left", "--workspace", small_path()});
    CHECK(tor.code == 0);
    CHECK(tor.out.find("1 0 1 0 1 0 1") != std::string::npos);

    auto epi_ok = run({"epicheck", "--hom", "loc-m2", "--workspace", small_path()});
    CHECK(epi_ok.code == 0);
    CHECK(epi_ok.out.find("passes to depth 6") != std::string::npos);

    auto epi_bad = run({"epicheck", "--hom", "aug", "--workspace", small_path()});
    CHECK(epi_bad.code == 1);
    CHECK(epi_bad.out.find("Tor_2") != std::string::npos);

    auto loc_ok = run({"localizing", "--hom", "loc-m2", "--workspace", small_path()});
    CHECK(loc_ok.code == 0);
    CHECK(loc_ok.out.find("consistent with localizing to depth 6") != std::string::npos);

    auto loc_bad = run({"localizing", "--hom", "aug", "--workspace", small_path()});
    CHECK(loc_bad.code == 1);
    CHECK(loc_bad.out.find("Tor obstruction at degree 2") != std::string::npos);
}

TEST_CASE("axioms subcommand: pass and exit codes") {
    auto ax = run({"axioms", "--hom", "aug", "--period", "1", "--samples", "20", "--seed", "7", "--suite",
                   "rank", "--workspace", small_path()});
    CHECK(ax.code == 0);
    CHECK(ax.out.find("all axiom checks passed") != std::string::npos);
}

TEST_CASE("examples run and self-check") {
    for (std::string name : {"smallexample-m2", "smallexample-aug", "fiedorowicz", "dualnumbers"}) {
        auto r = run({"example", name});
        INFO(name, ": ", r.out, r.err);
        CHECK(r.code == 0);
        auto rj = run({"example", name, "--json"});
        CHECK(rj.code == 0);
        CHECK_FALSE(Json::parse(rj.out, nullptr, false).is_discarded());
    }
    auto bad = run({"example", "nonexistent"});
    CHECK(bad.code == 2);
}

TEST_CASE("rank idempotent on a complex without one is an input error") {
    auto r = run({"rank", "idempotent", "--complex", "twoterm-alpha2-free", "--hom", "loc-m2", "--workspace",
                  small_path()});
    CHECK(r.code == 2);
    CHECK(r.err.find("idempotent") != std::string::npos);
}

TEST_CASE("json reports re-parse and agree with the human verdicts") {
    auto loc = run({"localizing", "--hom", "aug", "--json", "--workspace", small_path()});
    CHECK(loc.code == 1);
    Json j = Json::parse(loc.out);
    CHECK(j.at("report").at("consistent") == false);
    CHECK(j.at("report").at("obstruction") == "Tor_2 nonzero");

    auto human = run({"localizing", "--hom", "aug", "--workspace", small_path()});
    CHECK(human.out.find("Tor obstruction at degree 2") != std::string::npos);

    auto robj = run({"rank", "object", "--complex", "twoterm-alpha2-free", "--hom", "loc-m2", "--json",
                     "--workspace", small_path()});
    Json jr = Json::parse(robj.out);
    CoeffPoly p = jsonio::coeffpoly_from_json(jr.at("rank"));
    CHECK(p == CoeffPoly::normalize({{0, Rational(1, 2)}, {1, Rational(1, 2)}}, Period::infinite()));

    // every other command's JSON report re-parses as well
    for (auto args : std::vector<std::vector<std::string>>{
             {"tor", "--right", "S1", "--left", "S1-left"},
             {"epicheck", "--hom", "loc-m2"},
             {"submatrix", "--matrix", "upper-ea", "--hom", "loc-m2"},
             {"classify", "--map", "alpha2-endo", "--hom", "aug"},
             {"axioms", "--hom", "aug", "--suite", "sylvester", "--samples", "10"}}) {
        args.push_back("--json");
        args.push_back("--workspace");
        args.push_back(small_path());
        auto r = run(args);
        CHECK_FALSE(Json::parse(r.out, nullptr, false).is_discarded());
    }
}

TEST_CASE("identical command lines produce byte-identical JSON reports") {
    std::vector<std::string> cmd = {"axioms", "--hom",  "loc-m2",    "--suite",     "lemmas", "--samples",
                                    "15",     "--seed", "11",        "--json",      "--workspace", small_path()};
    auto a = run(cmd);
    auto b = run(cmd);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
}

TEST_CASE("input errors exit with code 2") {
    auto missing = run({"rank", "object", "--complex", "x", "--hom", "h", "--workspace", "/tmp/does_not_exist.json"});
    CHECK(missing.code == 2);

    auto unresolved = run({"rank", "object", "--complex", "nope", "--hom", "loc-m2", "--workspace", small_path()});
    CHECK(unresolved.code == 2);
    CHECK(unresolved.err.find("nope") != std::string::npos);

    auto empty = run({"rank", "object", "--complex", "x", "--hom", "h", "--workspace",
                      temp_workspace("", "empty")});
    CHECK(empty.code == 2);
    CHECK(empty.err.find("parse") != std::string::npos);
}

TEST_CASE("prime-field workspaces work end to end") {
    std::string ws_text = R"({
      "algebras": {
        "dual7": {"quiver": {"field": {"Fp": 7}, "vertices": ["v"],
                  "arrows": [{"name": "x", "src": "v", "dst": "v"}],
                  "relations": [[{"arrows": ["x", "x"], "coeff": "1"}]],
                  "path_cap": 1}}
      },
      "homs": {"res": {"algebra": "dual7", "n": 1, "images": {"e_v": [["1"]], "x": [["0"]]}}},
      "complexes": {"tx": {"algebra": "dual7",
        "degrees": [{"n": 1, "rank": 1}, {"n": 0, "rank": 1}],
        "differentials": {"1": [[["0", "1"]]]}}}
    })";
    std::string path = temp_workspace(ws_text, "fp7");
    auto r = run({"rank", "object", "--complex", "tx", "--hom", "res", "--workspace", path});
    CHECK(r.code == 0);
    CHECK(r.out.find("1 + q") != std::string::npos); // x acts by zero on the residue field
}

TEST_CASE("coeffpoly and matrix json round trips") {
    CoeffPoly p = CoeffPoly::normalize({{-2, Rational(1, 3)}, {5, Rational(-7, 2)}}, Period::infinite());
    CHECK(jsonio::coeffpoly_from_json(jsonio::coeffpoly_to_json(p)) == p);
    CoeffPoly q = CoeffPoly::normalize({{0, Rational(2)}, {2, Rational(1)}}, Period::finite(3));
    CHECK(jsonio::coeffpoly_from_json(jsonio::coeffpoly_to_json(q)) == q);

    ExactMatrix m(FieldSpec::prime_field(7), 2, 3);
    m.set(0, 1, Rational(5));
    m.set(1, 2, Rational(1, 2)); // canonicalizes to 4 mod 7
    CHECK(jsonio::matrix_from_json(jsonio::matrix_to_json(m)) == m);

    Workspace ws = load_workspace_string(fixtures::smallexample_json);
    const MatrixOverA& f = ws.matrix("upper-ea");
    MatrixOverA back = jsonio::amatrix_from_json(ws.algebra("small"), jsonio::amatrix_to_json(f));
    CHECK(back == f);
}
