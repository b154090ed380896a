#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <perfrank/axioms.hpp>

#include "test_support.hpp"

using namespace perfrank;
using namespace testsupport;

namespace {

SampleConfig quick(int samples, std::uint64_t seed = 7) {
    SampleConfig cfg;
    cfg.samples = samples;
    cfg.seed = seed;
    return cfg;
}

// corrupted oracle: inflates the object rank of every complex whose rank in
// degree zero is exactly one (a corrupted row of the rank table)
class CorruptedOracle : public RankOracle {
  public:
    explicit CorruptedOracle(SylvesterRank sigma) : inner_(std::move(sigma)) {}
    CoeffPoly object_rank(const FreeComplex& x, Period d) const override {
        CoeffPoly r = inner_.object_rank(x, d);
        if (x.rank_at(0) == 1) return r + CoeffPoly::constant(Rational(1), d);
        return r;
    }
    CoeffPoly morphism_rank(const ChainMap& f, Period d) const override {
        return inner_.morphism_rank(f, d);
    }

  private:
    SylvesterRankOracle inner_;
};

} // namespace

TEST_CASE("rank axioms pass for both homs at periods 1, 3 and infinity") {
    auto alg = small_algebra();
    for (auto hom : {small_hom_m2(alg), small_hom_aug(alg)}) {
        SylvesterRank sigma(hom);
        for (Period d : {Period::finite(1), Period::finite(3), Period::infinite()}) {
            AxiomReport rep = check_rank_axioms(sigma, d, quick(60));
            INFO("period ", d.str());
            for (const auto& c : rep.checks) {
                INFO(c.name, ": ", c.first_counterexample);
                CHECK(c.failed == 0);
                CHECK(c.checked > 0);
            }
            CHECK(rep.all_passed());
        }
    }
}

TEST_CASE("sylvester axioms pass for both homs") {
    auto alg = small_algebra();
    for (auto hom : {small_hom_m2(alg), small_hom_aug(alg)}) {
        SylvesterRank sigma(hom);
        AxiomReport rep = check_sylvester_axioms(sigma, quick(60));
        for (const auto& c : rep.checks) {
            INFO(c.name, ": ", c.first_counterexample);
            CHECK(c.failed == 0);
        }
        CHECK(rep.all_passed());
    }
}

TEST_CASE("lemma suite passes for both homs") {
    auto alg = small_algebra();
    for (auto hom : {small_hom_m2(alg), small_hom_aug(alg)}) {
        SylvesterRank sigma(hom);
        for (Period d : {Period::finite(1), Period::finite(5), Period::infinite()}) {
            AxiomReport rep = check_lemma_suite(sigma, d, quick(40));
            for (const auto& c : rep.checks) {
                INFO(c.name, ": ", c.first_counterexample);
                CHECK(c.failed == 0);
            }
            CHECK(rep.all_passed());
        }
    }
}

TEST_CASE("a corrupted rank table is detected with a replayable counterexample") {
    auto alg = small_algebra();
    SylvesterRank sigma(small_hom_m2(alg));
    CorruptedOracle bad(sigma);
    AxiomReport rep = check_rank_axioms(bad, alg, Period::infinite(), quick(60));
    CHECK_FALSE(rep.all_passed());
    bool have_counterexample = false;
    for (const auto& c : rep.checks)
        if (c.failed > 0 && !c.first_counterexample.empty() && c.first_failure_seed != 0)
            have_counterexample = true;
    CHECK(have_counterexample);

    // replay: the same seed reproduces the identical failure
    AxiomReport again = check_rank_axioms(bad, alg, Period::infinite(), quick(60));
    REQUIRE(again.checks.size() == rep.checks.size());
    for (std::size_t i = 0; i < rep.checks.size(); ++i) {
        CHECK(again.checks[i].failed == rep.checks[i].failed);
        CHECK(again.checks[i].first_failure_seed == rep.checks[i].first_failure_seed);
        CHECK(again.checks[i].first_counterexample == rep.checks[i].first_counterexample);
    }
}

TEST_CASE("reports are deterministic functions of the seed") {
    auto alg = small_algebra();
    SylvesterRank sigma(small_hom_aug(alg));
    AxiomReport a = check_rank_axioms(sigma, Period::finite(1), quick(15, 99));
    AxiomReport b = check_rank_axioms(sigma, Period::finite(1), quick(15, 99));
    REQUIRE(a.checks.size() == b.checks.size());
    for (std::size_t i = 0; i < a.checks.size(); ++i) {
        CHECK(a.checks[i].name == b.checks[i].name);
        CHECK(a.checks[i].checked == b.checks[i].checked);
        CHECK(a.checks[i].failed == b.checks[i].failed);
    }
}
