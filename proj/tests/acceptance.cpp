// Acceptance suite: one pass/fail line per criterion, exact arithmetic, zero
// tolerance.  Runs the checks through the same surfaces the CLI exposes.

#include <iostream>
#include <sstream>

#include <perfrank/cli.hpp>

#include "test_support.hpp"

using namespace perfrank;
using namespace testsupport;
using jsonio::Json;

namespace {

int failures = 0;

void report(int criterion, bool ok, const std::string& what) {
    std::cout << (ok ? "[PASS]" : "[FAIL]") << " criterion " << criterion << ": " << what << "\n";
    if (!ok) ++failures;
}

Json run_json(std::vector<std::string> args) {
    args.push_back("--json");
    std::ostringstream out, err;
    int code = cli::run_cli(args, out, err);
    Json j = Json::parse(out.str(), nullptr, false);
    if (j.is_discarded()) j = Json::object();
    j["_exit"] = code;
    return j;
}

std::string small_ws_path() {
    static std::string path = [] {
        std::string p = "/tmp/perfrank_acceptance_small.json";
        std::ofstream f(p);
        f << fixtures::smallexample_json;
        return p;
    }();
    return path;
}

// 1. the localizing branch of the small example
void criterion1() {
    Json epi = run_json({"epicheck", "--hom", "loc-m2", "--workspace", small_ws_path()});
    bool ok = epi["_exit"] == 0;
    ok = ok && epi.at("report").at("tensor_dim") == 4;
    ok = ok && epi.at("report").at("mult_bijective") == true;
    ok = ok && epi.at("report").at("tor_vanishing") == Json::array({0, 0, 0, 0, 0, 0});
    ok = ok && epi.at("report").at("passes") == true;

    Json rk = run_json({"rank", "object", "--complex", "twoterm-alpha2", "--hom", "loc-m2", "--workspace",
                        small_ws_path()});
    ok = ok && rk["_exit"] == 0;
    ok = ok && jsonio::coeffpoly_from_json(rk.at("rank")).is_zero();

    Json loc = run_json({"localizing", "--hom", "loc-m2", "--workspace", small_ws_path()});
    ok = ok && loc["_exit"] == 0 && loc.at("report").at("consistent") == true &&
         loc.at("report").at("depth") == 6;

    report(1, ok,
           "small example, localizing branch: epicheck flat to depth 6, kernel generator has rank 0, "
           "localizing verdict consistent");
}

// 2. the non-localizing branch
void criterion2() {
    auto alg = small_algebra();
    auto dims = tor_dims(small_s1(alg), small_s1(alg, Side::Left), 6);
    bool ok = dims == std::vector<int>{1, 0, 1, 0, 1, 0, 1};

    Json loc = run_json({"localizing", "--hom", "aug", "--workspace", small_ws_path()});
    ok = ok && loc["_exit"] == 1;
    ok = ok && loc.at("report").at("consistent") == false;
    ok = ok && loc.at("report").at("obstruction") == "Tor_2 nonzero";

    report(2, ok, "small example, non-localizing branch: Tor(S1,S1) = [1,0,1,0,1,0,1], Tor_2 obstruction reported");
}

// 3. the monoid algebra reproduces the homology of the 2-sphere
void criterion3() {
    auto fied = fiedorowicz_algebra();
    auto dims = tor_dims(fiedorowicz_trivial(fied, Side::Right), fiedorowicz_trivial(fied, Side::Left), 4);
    report(3, dims == std::vector<int>{1, 0, 1, 0, 0}, "Fiedorowicz monoid algebra: Tor(k,k) = [1,0,1,0,0]");
}

// 4. restriction of the derived extension is the classical rank, exactly
void criterion4() {
    auto alg = small_algebra();
    SylvesterRank m2(small_hom_m2(alg));
    SylvesterRank aug(small_hom_aug(alg));
    Rng rng(20260808);
    int checked = 0;
    bool ok = true;
    for (int i = 0; i < 200; ++i) {
        MatrixOverA f = sampling::random_matrix(rng, alg, static_cast<int>(1 + rng.below(3)),
                                                static_cast<int>(1 + rng.below(3)));
        FreeComplex src = one_term(alg, f.rows(), 0);
        FreeComplex tgt = one_term(alg, f.cols(), 0);
        ChainMap cm(src, tgt, {{0, f}});
        for (const SylvesterRank* sigma : {&m2, &aug}) {
            CoeffPoly derived = derived_morphism_rank(*sigma, cm, Period::infinite());
            CoeffPoly classical = CoeffPoly::constant(sylvester_morphism_rank(*sigma, f), Period::infinite());
            if (derived != classical) ok = false;
            ++checked;
        }
    }
    report(4, ok && checked == 400,
           "derived morphism rank restricts to the sylvester rank on 200 random matrices under both homs");
}

// 5. axiom suites at periods 1, 3 and infinity plus fault detection
void criterion5() {
    auto alg = small_algebra();
    bool ok = true;
    std::string detail;
    for (auto hom : {small_hom_m2(alg), small_hom_aug(alg)}) {
        SylvesterRank sigma(hom);
        SampleConfig cfg;
        cfg.samples = 200;
        cfg.seed = 42;
        for (Period d : {Period::finite(1), Period::finite(3), Period::infinite()}) {
            AxiomReport r = check_rank_axioms(sigma, d, cfg);
            if (!r.all_passed()) ok = false;
            if (r.find("Op3.cone-identity") == nullptr || r.find("Op3.cone-identity")->checked < 200) ok = false;
        }
        AxiomReport s = check_sylvester_axioms(sigma, cfg);
        if (!s.all_passed()) ok = false;
    }

    // single-fault injection: corrupt one rank-table row and expect detection
    struct Corrupted : RankOracle {
        SylvesterRankOracle inner;
        explicit Corrupted(SylvesterRank s) : inner(std::move(s)) {}
        CoeffPoly object_rank(const FreeComplex& x, Period d) const override {
            CoeffPoly r = inner.object_rank(x, d);
            if (x.rank_at(0) == 1) return r + CoeffPoly::constant(Rational(1), d);
            return r;
        }
        CoeffPoly morphism_rank(const ChainMap& f, Period d) const override {
            return inner.morphism_rank(f, d);
        }
    };
    SampleConfig quick;
    quick.samples = 200;
    quick.seed = 42;
    Corrupted corrupted{SylvesterRank(small_hom_m2(alg))};
    AxiomReport bad = check_rank_axioms(corrupted, alg, Period::infinite(), quick);
    if (bad.all_passed()) ok = false;

    report(5, ok,
           "rank and sylvester axiom suites pass 200/200 samples for both homs at periods 1, 3, inf; "
           "injected fault detected");
}

// 6. exactness and invariance of the object rank
void criterion6() {
    auto alg = small_algebra();
    SylvesterRank m2(small_hom_m2(alg));
    SylvesterRank aug(small_hom_aug(alg));
    Rng rng(606060);
    bool ok = true;
    for (int i = 0; i < 50; ++i) {
        FreeComplex c = sampling::random_contractible(rng, alg);
        if (!derived_object_rank(m2, c).is_zero()) ok = false;
        if (!derived_object_rank(aug, c).is_zero()) ok = false;

        FreeComplex x = sampling::random_complex(rng, alg, 3);
        CoeffPoly base = derived_object_rank(m2, x);
        if (derived_object_rank(m2, direct_sum(x, c)) != base) ok = false;
        if (derived_object_rank(m2, sampling::conjugated_complex(rng, x)) != base) ok = false;
    }
    report(6, ok,
           "object rank vanishes on 50 random contractible complexes and is invariant under contractible "
           "summands and conjugation");
}

// 7. local matrix rank and full square submatrices over the dual numbers
void criterion7() {
    auto dual = dual_numbers();
    auto rad = radical_and_residue(dual);
    SylvesterRank res(dual_residue_hom(dual));
    Rng rng(707070);
    bool ok = rad.is_local;
    for (int i = 0; i < 100; ++i) {
        MatrixOverA m = sampling::random_matrix(rng, dual, static_cast<int>(1 + rng.below(5)),
                                                static_cast<int>(1 + rng.below(5)));
        if (local_matrix_rank(rad, m) != sylvester_morphism_rank(res, m)) ok = false;
    }
    // witnesses with exact rank equality on matrices up to size 5
    for (int i = 0; i < 40; ++i) {
        int rows = static_cast<int>(1 + rng.below(5));
        int cols = static_cast<int>(1 + rng.below(5));
        MatrixOverA m = sampling::random_matrix(rng, dual, rows, cols);
        Rational rho = sylvester_morphism_rank(res, m);
        SubmatrixWitness w = full_square_submatrix(res, m);
        if (w.rank_value != rho) ok = false;
        if (w.on_base_change) ok = false; // integral ranks stay inside the original matrix
        if (static_cast<int>(w.row_set.size()) != rho.num()) ok = false;
        if (!rho.is_zero()) {
            MatrixOverA sub = m.submatrix(w.row_set, w.col_set);
            if (sylvester_morphism_rank(res, sub) != rho) ok = false;
        }
    }
    report(7, ok,
           "local matrix rank equals the residue-hom rank on 100 random matrices; full square submatrix "
           "witnesses verified on matrices up to size 5");
}

// 8. coefficient ring: division round trip and reduction homomorphism
void criterion8() {
    Rng rng(808080);
    bool ok = true;
    auto random_poly = [&](Period p, bool nonneg) {
        std::vector<std::pair<std::int64_t, Rational>> terms;
        int nterms = static_cast<int>(rng.below(5));
        for (int i = 0; i < nterms; ++i) {
            std::int64_t e = rng.range(p.is_finite() ? 0 : -6, p.is_finite() ? p.value() * 2 : 6);
            std::int64_t num = rng.range(nonneg ? 0 : -9, 9);
            terms.emplace_back(e, Rational(num, rng.range(1, 4)));
        }
        return CoeffPoly::normalize(terms, p);
    };

    for (int i = 0; i < 500; ++i) {
        Period p = rng.chance(50) ? Period::infinite() : Period::finite(2 * rng.range(0, 4) + 1);
        CoeffPoly phi = random_poly(p, true);
        auto div = divide_q_plus_1(CoeffPoly::one_plus_q(p) * phi);
        if (!div.quotient || *div.quotient != phi || !div.nonneg_witness) ok = false;
    }
    for (int i = 0; i < 500; ++i) {
        std::int64_t dprime = rng.range(1, 5);
        Period src = rng.chance(40) ? Period::infinite() : Period::finite(dprime * rng.range(1, 4));
        Period tgt = Period::finite(dprime);
        CoeffPoly a = random_poly(src, false);
        CoeffPoly b = random_poly(src, false);
        if ((a + b).reduced_to(tgt) != a.reduced_to(tgt) + b.reduced_to(tgt)) ok = false;
        if ((a * b).reduced_to(tgt) != a.reduced_to(tgt) * b.reduced_to(tgt)) ok = false;
        CoeffPoly c = random_poly(src, true);
        if (!c.reduced_to(tgt).is_nonneg()) ok = false;
        if (c.reduced_to(tgt).is_zero() && !c.is_zero()) ok = false;
    }
    report(8, ok,
           "divide_q_plus_1 round-trips 500 random nonnegative quotients at inf and odd d <= 9; "
           "reduce_period is a cone-preserving ring homomorphism on 500 random pairs");
}

} // namespace

int main() {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    if (failures == 0) {
        std::cout << "acceptance: all 8 criteria passed\n";
        return 0;
    }
    std::cout << "acceptance: " << failures << " criteria FAILED\n";
    return 1;
}
