#pragma once

// Property-test harness executing the rank-function axiom systems and the
// supporting lemmas against randomly generated complexes, chain maps and
// triangles.  Triangles are sampled in the canonical form
// X -> Y -> cone(f) -> Sigma X.
//
// The harness evaluates an abstract rank oracle, so a corrupted rank table
// can be checked as easily as a genuine Sylvester-generated rank; reports
// are deterministic functions of (seed, config, oracle, period).

#include <functional>
#include <sstream>

#include "rank.hpp"

namespace perfrank {

struct SampleConfig {
    std::uint64_t seed = 1;
    int samples = 200;
    int max_degrees = 3;   // pieces per generated complex
    int max_rank = 2;      // rank per degree of generated pieces
    unsigned density = 60; // percent fill of generated entries

    sampling::GenParams gen() const {
        sampling::GenParams p;
        p.max_rank = max_rank;
        p.density = density;
        return p;
    }
};

class RankOracle {
  public:
    virtual ~RankOracle() = default;
    virtual CoeffPoly object_rank(const FreeComplex& x, Period d) const = 0;
    virtual CoeffPoly morphism_rank(const ChainMap& f, Period d) const = 0;
};

class SylvesterRankOracle : public RankOracle {
  public:
    explicit SylvesterRankOracle(SylvesterRank sigma) : sigma_(std::move(sigma)) {}
    CoeffPoly object_rank(const FreeComplex& x, Period d) const override {
        return derived_object_rank(sigma_, x).reduced_to(d);
    }
    CoeffPoly morphism_rank(const ChainMap& f, Period d) const override {
        return derived_morphism_rank(sigma_, f, d);
    }
    const SylvesterRank& sylvester() const { return sigma_; }

  private:
    SylvesterRank sigma_;
};

struct AxiomCheck {
    std::string name;
    int checked = 0;
    int failed = 0;
    std::uint64_t first_failure_seed = 0; // per-sample seed that replays the failure
    std::string first_counterexample;

    bool passed() const { return failed == 0; }
};

struct AxiomReport {
    std::vector<AxiomCheck> checks;

    AxiomCheck& at(const std::string& name) {
        for (auto& c : checks)
            if (c.name == name) return c;
        checks.push_back(AxiomCheck{name, 0, 0, 0, {}});
        return checks.back();
    }
    const AxiomCheck* find(const std::string& name) const {
        for (const auto& c : checks)
            if (c.name == name) return &c;
        return nullptr;
    }
    bool all_passed() const {
        for (const auto& c : checks)
            if (!c.passed()) return false;
        return true;
    }
    int total_failures() const {
        int t = 0;
        for (const auto& c : checks) t += c.failed;
        return t;
    }
    void record(const std::string& name, bool ok, std::uint64_t sample_seed,
                const std::function<std::string()>& describe) {
        AxiomCheck& c = at(name);
        ++c.checked;
        if (!ok) {
            if (c.failed == 0) {
                c.first_failure_seed = sample_seed;
                c.first_counterexample = describe();
            }
            ++c.failed;
        }
    }
};

namespace axioms_detail {

inline std::uint64_t sample_seed(std::uint64_t root, int index, std::uint64_t salt) {
    Rng mix(root ^ (0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(index + 1)) ^ salt);
    return mix.next();
}

inline std::string describe_complex(const FreeComplex& x) {
    std::ostringstream os;
    os << "ranks{";
    bool first = true;
    for (const auto& [n, r] : x.ranks()) {
        if (!first) os << ", ";
        os << n << ":" << r;
        first = false;
    }
    os << "}";
    return os.str();
}

} // namespace axioms_detail

// Periodic rank-function axioms on canonical triangles.
inline AxiomReport check_rank_axioms(const RankOracle& rho, const AlgebraRef& alg, Period d,
                                     const SampleConfig& cfg) {
    require_morphism_period(d);
    AxiomReport rep;
    sampling::GenParams gp = cfg.gen();
    for (int i = 0; i < cfg.samples; ++i) {
        std::uint64_t ss = axioms_detail::sample_seed(cfg.seed, i, 0xA1);
        Rng rng(ss);
        FreeComplex x = sampling::random_complex(rng, alg, cfg.max_degrees, gp);
        FreeComplex y = sampling::random_complex(rng, alg, cfg.max_degrees, gp);
        ChainMap f = sampling::random_chain_map(rng, x, y, gp);
        ConeTriangle tri = cone(f);

        auto ctx = [&] {
            return "X=" + axioms_detail::describe_complex(x) + " Y=" + axioms_detail::describe_complex(y) +
                   " seed=" + std::to_string(ss);
        };

        CoeffPoly rx = rho.object_rank(x, d);
        CoeffPoly ry = rho.object_rank(y, d);
        CoeffPoly rf = rho.morphism_rank(f, d);

        rep.record("Op1.shift-object", rho.object_rank(shift(x, 1), d) == rx.shifted(1), ss, ctx);
        rep.record("Mp1.shift-morphism", rho.morphism_rank(f.shifted(1), d) == rf.shifted(1), ss, ctx);
        rep.record("O2.additivity-object", rho.object_rank(direct_sum(x, y), d) == rx + ry, ss, ctx);

        ChainMap g = sampling::random_chain_map(rng, x, y, gp);
        rep.record("M2.additivity-morphism",
                   rho.morphism_rank(ChainMap::direct_sum(f, g), d) == rf + rho.morphism_rank(g, d), ss, ctx);

        // rank-nullity on the canonical triangle
        CoeffPoly riota = rho.morphism_rank(tri.include_target, d);
        rep.record("M3.rank-nullity", rf + riota == ry, ss, ctx);

        // exact cone identity: rho(X) - rho(Y) + rho(cone f) = (q+1) rho(connecting)
        CoeffPoly rcone = rho.object_rank(tri.cone, d);
        CoeffPoly rconn = rho.morphism_rank(tri.project_to_shifted, d).shifted(-1);
        rep.record("Op3.cone-identity", rx - ry + rcone == CoeffPoly::one_plus_q(d) * rconn, ss, ctx);

        // triangular inequality for a block-upper-triangular map
        FreeComplex z = sampling::random_complex(rng, alg, cfg.max_degrees, gp);
        FreeComplex w = sampling::random_complex(rng, alg, cfg.max_degrees, gp);
        ChainMap gzw = sampling::random_chain_map(rng, z, w, gp);
        ChainMap h = sampling::random_chain_map(rng, z, y, gp);
        // block map X (+) Z -> Y (+) W with components f, g, h
        FreeComplex src = direct_sum(x, z);
        FreeComplex tgt = direct_sum(y, w);
        std::map<int, MatrixOverA> blocks;
        for (const auto& [n, r] : src.ranks()) {
            (void)r;
            MatrixOverA m(alg, src.rank_at(n), tgt.rank_at(n));
            MatrixOverA mf = f.component(n), mg = gzw.component(n), mh = h.component(n);
            for (int a = 0; a < mf.rows(); ++a)
                for (int b = 0; b < mf.cols(); ++b) m.at(a, b) = mf.at(a, b);
            for (int a = 0; a < mh.rows(); ++a)
                for (int b = 0; b < mh.cols(); ++b) m.at(x.rank_at(n) + a, b) = mh.at(a, b);
            for (int a = 0; a < mg.rows(); ++a)
                for (int b = 0; b < mg.cols(); ++b) m.at(x.rank_at(n) + a, y.rank_at(n) + b) = mg.at(a, b);
            blocks.emplace(n, std::move(m));
        }
        ChainMap block_map(src, tgt, std::move(blocks));
        rep.record("M4.triangular",
                   (rho.morphism_rank(block_map, d) - rf - rho.morphism_rank(gzw, d)).is_nonneg(), ss, ctx);

        // ideal condition on a composition through y
        FreeComplex v = sampling::random_complex(rng, alg, cfg.max_degrees, gp);
        ChainMap k = sampling::random_chain_map(rng, y, v, gp);
        CoeffPoly rkf = rho.morphism_rank(ChainMap::compose(f, k), d);
        rep.record("M5.ideal", (rf - rkf).is_nonneg() && (rho.morphism_rank(k, d) - rkf).is_nonneg(), ss, ctx);
    }
    return rep;
}

inline AxiomReport check_rank_axioms(const SylvesterRank& sigma, Period d, const SampleConfig& cfg) {
    return check_rank_axioms(SylvesterRankOracle(sigma), sigma.algebra(), d, cfg);
}

// Classical Sylvester axioms on matrices and finitely presented modules.
inline AxiomReport check_sylvester_axioms(const SylvesterRank& sigma, const SampleConfig& cfg) {
    AxiomReport rep;
    const AlgebraRef& alg = sigma.algebra();
    sampling::GenParams gp = cfg.gen();

    // free module A^g with right action, for sampling presented modules
    auto free_module = [&](int g) {
        FDModule m = FDModule::regular(alg, Side::Right);
        FDModule out = m;
        for (int i = 1; i < g; ++i) {
            std::vector<ExactMatrix> act;
            for (int b = 0; b < alg->dim; ++b)
                act.push_back(ExactMatrix::block_diag(out.act_basis(b), m.act_basis(b)));
            out = FDModule(alg, out.dim() + m.dim(), Side::Right, std::move(act));
        }
        return out;
    };
    auto random_quotient = [&](Rng& rng, int g) {
        FDModule freem = free_module(g);
        std::vector<std::vector<Rational>> gens;
        int count = static_cast<int>(rng.below(3));
        for (int i = 0; i < count; ++i) {
            std::vector<Rational> v(static_cast<std::size_t>(freem.dim()), Rational(0));
            for (auto& c : v)
                if (rng.chance(40)) c = fieldops::canon(alg->field, Rational(rng.range(-2, 2)));
            gens.push_back(std::move(v));
        }
        auto closed = submodule_span(freem, gens);
        return quotient_module(freem, closed);
    };
    auto direct_sum_modules = [&](const FDModule& a, const FDModule& b) {
        std::vector<ExactMatrix> act;
        for (int i = 0; i < alg->dim; ++i)
            act.push_back(ExactMatrix::block_diag(a.act_basis(i), b.act_basis(i)));
        return FDModule(alg, a.dim() + b.dim(), Side::Right, std::move(act));
    };

    for (int i = 0; i < cfg.samples; ++i) {
        std::uint64_t ss = axioms_detail::sample_seed(cfg.seed, i, 0xB2);
        Rng rng(ss);
        auto ctx = [&] { return "seed=" + std::to_string(ss); };

        // m1 on identities of several sizes
        int idn = static_cast<int>(1 + rng.below(3));
        rep.record("m1.normalization",
                   sylvester_morphism_rank(sigma, MatrixOverA::identity(alg, idn)) == Rational(idn), ss, ctx);

        int a = static_cast<int>(1 + rng.below(3)), b = static_cast<int>(1 + rng.below(3));
        int c = static_cast<int>(1 + rng.below(3)), e = static_cast<int>(1 + rng.below(3));
        MatrixOverA mf = sampling::random_matrix(rng, alg, a, b, gp);
        MatrixOverA mg = sampling::random_matrix(rng, alg, c, e, gp);
        Rational rf = sylvester_morphism_rank(sigma, mf);
        Rational rg = sylvester_morphism_rank(sigma, mg);
        rep.record("m2.additivity",
                   sylvester_morphism_rank(sigma, MatrixOverA::block_diag(mf, mg)) == rf + rg, ss, ctx);

        // m3: block [[f, 0], [h, g]] with h : A^c -> A^b
        MatrixOverA mh = sampling::random_matrix(rng, alg, c, b, gp);
        MatrixOverA blk(alg, a + c, b + e);
        for (int r = 0; r < a; ++r)
            for (int s = 0; s < b; ++s) blk.at(r, s) = mf.at(r, s);
        for (int r = 0; r < c; ++r)
            for (int s = 0; s < b; ++s) blk.at(a + r, s) = mh.at(r, s);
        for (int r = 0; r < c; ++r)
            for (int s = 0; s < e; ++s) blk.at(a + r, b + s) = mg.at(r, s);
        rep.record("m3.triangular", sylvester_morphism_rank(sigma, blk) >= rf + rg, ss, ctx);

        // m4: composition A^a -> A^b -> A^e
        MatrixOverA mk = sampling::random_matrix(rng, alg, b, e, gp);
        Rational rkf = sylvester_morphism_rank(sigma, MatrixOverA::compose(mf, mk));
        rep.record("m4.ideal", rkf <= rf && rkf <= sylvester_morphism_rank(sigma, mk), ss, ctx);

        // object axioms on presented modules
        rep.record("o1.normalization",
                   sylvester_module_rank(sigma, FDModule::regular(alg, Side::Right)) == Rational(1), ss, ctx);

        FDModule m1 = random_quotient(rng, static_cast<int>(1 + rng.below(2)));
        FDModule m2 = random_quotient(rng, static_cast<int>(1 + rng.below(2)));
        rep.record("o2.additivity",
                   sylvester_module_rank(sigma, direct_sum_modules(m1, m2)) ==
                       sylvester_module_rank(sigma, m1) + sylvester_module_rank(sigma, m2),
                   ss, ctx);

        // o3 on 0 -> L -> M -> N -> 0 built from a random submodule of m1
        {
            std::vector<std::vector<Rational>> gens;
            if (m1.dim() > 0) {
                std::vector<Rational> v(static_cast<std::size_t>(m1.dim()), Rational(0));
                for (auto& cc : v)
                    if (rng.chance(50)) cc = fieldops::canon(alg->field, Rational(rng.range(-2, 2)));
                gens.push_back(std::move(v));
            }
            auto closed = submodule_span(m1, gens);
            FDModule n = quotient_module(m1, closed);
            Rational rm = sylvester_module_rank(sigma, m1);
            Rational rn = sylvester_module_rank(sigma, n);
            bool ok = rn <= rm;
            if (!closed.empty()) {
                FDModule l = submodule(m1, closed);
                ok = ok && rm <= sylvester_module_rank(sigma, l) + rn;
            } else {
                ok = ok && rm <= rn; // L = 0
            }
            rep.record("o3.exact-sequence", ok, ss, ctx);
        }
    }
    return rep;
}

// Named lemma checks: subadditivity, scalar invariance, zero-summand
// invariance, composition with full maps, the weak Neeman triangle, and the
// termwise/morphism bounds.
inline AxiomReport check_lemma_suite(const SylvesterRank& sigma, Period d, const SampleConfig& cfg) {
    require_morphism_period(d);
    AxiomReport rep;
    const AlgebraRef& alg = sigma.algebra();
    sampling::GenParams gp = cfg.gen();
    SylvesterRankOracle rho(sigma);

    for (int i = 0; i < cfg.samples; ++i) {
        std::uint64_t ss = axioms_detail::sample_seed(cfg.seed, i, 0xC3);
        Rng rng(ss);
        auto ctx = [&] { return "seed=" + std::to_string(ss); };

        FreeComplex x = sampling::random_complex(rng, alg, cfg.max_degrees, gp);
        FreeComplex y = sampling::random_complex(rng, alg, cfg.max_degrees, gp);
        ChainMap f = sampling::random_chain_map(rng, x, y, gp);
        ChainMap g = sampling::random_chain_map(rng, x, y, gp);
        CoeffPoly rf = rho.morphism_rank(f, d);
        CoeffPoly rg = rho.morphism_rank(g, d);

        rep.record("sum.subadditive", (rf + rg - rho.morphism_rank(f + g, d)).is_nonneg(), ss, ctx);

        Rational alpha = rng.chance(50) ? Rational(-1) : Rational(rng.chance(50) ? 2 : -3);
        rep.record("scalar.invariance", rho.morphism_rank(f.scaled(alpha), d) == rf, ss, ctx);

        if (rg.is_zero())
            rep.record("additive.zero-summand", rho.morphism_rank(f + g, d) == rf, ss, ctx);
        rep.record("additive.zero-summand", rho.morphism_rank(f + ChainMap::zero(x, y), d) == rf, ss, ctx);

        // full composition: an isomorphism onto a conjugated copy is full
        {
            auto conj = sampling::conjugated_with_iso(rng, x, gp);
            ChainMap from_conj = sampling::random_chain_map(rng, conj.complex, y, gp);
            rep.record("full.composition",
                       rho.morphism_rank(ChainMap::compose(conj.iso, from_conj), d) ==
                           rho.morphism_rank(from_conj, d),
                       ss, ctx);
        }

        // weak Neeman: triangle Y -> cone(f) (+) Z -> cone(gf) for composable f, g
        {
            FreeComplex z = sampling::random_complex(rng, alg, cfg.max_degrees, gp);
            ChainMap gy = sampling::random_chain_map(rng, y, z, gp);
            CoeffPoly ra = rho.object_rank(y, d);
            CoeffPoly rb = rho.object_rank(cone(f).cone, d) + rho.object_rank(z, d);
            CoeffPoly rc = rho.object_rank(cone(ChainMap::compose(f, gy)).cone, d);
            bool ok = (ra + rc - rb).is_nonneg() && (rb + ra.shifted(1) - rc).is_nonneg() &&
                      (rc + rb.shifted(1) - ra.shifted(1)).is_nonneg();
            rep.record("weak-neeman.triangle", ok, ss, ctx);
        }

        // bounds
        {
            std::vector<std::pair<std::int64_t, Rational>> terms;
            for (const auto& [n, r] : x.ranks()) terms.emplace_back(n, Rational(r));
            CoeffPoly termwise = CoeffPoly::normalize(terms, Period::infinite()).reduced_to(d);
            rep.record("bound.termwise", (termwise - rho.object_rank(x, d)).is_nonneg(), ss, ctx);
            rep.record("bound.source-target",
                       (rho.object_rank(x, d) - rf).is_nonneg() && (rho.object_rank(y, d) - rf).is_nonneg(), ss,
                       ctx);
        }
    }
    return rep;
}

} // namespace perfrank
