#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <perfrank/coeff.hpp>
#include <perfrank/rng.hpp>

using namespace perfrank;

namespace {

CoeffPoly poly(std::vector<std::pair<std::int64_t, Rational>> terms, Period p) {
    return CoeffPoly::normalize(terms, p);
}

CoeffPoly random_poly(Rng& rng, Period p, bool nonneg) {
    std::vector<std::pair<std::int64_t, Rational>> terms;
    int nterms = static_cast<int>(rng.below(5));
    for (int i = 0; i < nterms; ++i) {
        std::int64_t e = rng.range(p.is_finite() ? 0 : -6, p.is_finite() ? p.value() * 2 : 6);
        Rational c(rng.range(nonneg ? 0 : -9, 9), rng.range(1, 4));
        terms.emplace_back(e, c);
    }
    CoeffPoly out = CoeffPoly::normalize(terms, p);
    if (nonneg) {
        // normalization may only add same-sign terms, but build positively anyway
        std::vector<std::pair<std::int64_t, Rational>> pos;
        for (auto& [e, c] : terms) pos.emplace_back(e, c.is_negative() ? -c : c);
        out = CoeffPoly::normalize(pos, p);
    }
    return out;
}

// Independent long-division oracle for (1+q) at infinite period: tries every
// possible quotient support directly from the defining identity.
bool division_oracle(const CoeffPoly& f, CoeffPoly& quotient_out) {
    if (f.is_zero()) {
        quotient_out = CoeffPoly::zero(Period::infinite());
        return true;
    }
    std::int64_t lo = f.coeffs().begin()->first;
    std::int64_t hi = f.coeffs().rbegin()->first;
    // phi_i determined top-down: phi_{hi-1} = a_hi, phi_{i-1} = a_i - phi_i
    std::vector<std::pair<std::int64_t, Rational>> terms;
    Rational carry(0);
    for (std::int64_t i = hi; i > lo; --i) {
        Rational c = f.coeff(i) - carry;
        terms.emplace_back(i - 1, c);
        carry = c;
    }
    if (f.coeff(lo) != carry) return false;
    quotient_out = CoeffPoly::normalize(terms, Period::infinite());
    return (CoeffPoly::one_plus_q(Period::infinite()) * quotient_out) == f;
}

} // namespace

TEST_CASE("rational arithmetic is exact and overflow-checked") {
    CHECK(Rational(1, 2) + Rational(1, 3) == Rational(5, 6));
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK(Rational(1, -2) == Rational(-1, 2));
    CHECK(Rational::parse("-7/3") == Rational(-7, 3));
    CHECK(Rational::parse("5") == Rational(5));
    CHECK(Rational(3).str() == "3");
    CHECK(Rational(-1, 2).str() == "-1/2");
    CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
    CHECK_THROWS_AS(Rational(1) / Rational(0), std::domain_error);
    const std::int64_t big = INT64_MAX;
    CHECK_THROWS_AS(Rational(big) + Rational(big), std::overflow_error);
    CHECK_THROWS_AS(Rational(big) * Rational(2), std::overflow_error);
    CHECK_THROWS_AS(Rational::parse("not-a-number"), std::invalid_argument);
}

TEST_CASE("normalize reduces exponents, merges and drops zeros") {
    Period d3 = Period::finite(3);
    CHECK(poly({{0, 1}, {3, 2}}, d3) == poly({{0, 3}}, d3));
    CHECK(poly({{5, 1}}, Period::infinite()).coeff(5) == Rational(1));
    CHECK(poly({{0, 1}, {0, -1}}, Period::finite(1)).is_zero());
    CHECK(poly({{-1, 1}}, d3) == poly({{2, 1}}, d3)); // canonical range {0..d-1}
}

TEST_CASE("arithmetic in R(d)") {
    Period inf = Period::infinite();
    CoeffPoly a = poly({{0, 1}, {1, 1}}, inf);                 // 1+q
    CoeffPoly b = poly({{0, 1}, {1, -1}, {2, 1}}, inf);        // 1-q+q^2
    CHECK(a * b == poly({{0, 1}, {3, 1}}, inf));               // telescoping to 1+q^3

    Period d1 = Period::finite(1);
    CHECK(poly({{0, 1}}, d1).shifted(1) == poly({{0, 1}}, d1)); // q = 1 at d = 1

    Period d2 = Period::finite(2);
    CoeffPoly c = poly({{0, 1}, {1, 1}}, d2);
    CHECK(c * c == poly({{0, 2}, {1, 2}}, d2)); // q^2 = 1

    CHECK_THROWS_AS(poly({{0, 1}}, d1) + poly({{0, 1}}, d2), std::invalid_argument);
    CHECK(a.scaled(Rational(1, 2)) == poly({{0, {1, 2}}, {1, {1, 2}}}, inf));
}

TEST_CASE("nonnegativity cone on canonical representatives") {
    CHECK(poly({{0, {1, 2}}, {1, 2}}, Period::finite(3)).is_nonneg());
    CHECK_FALSE(poly({{0, -1}}, Period::infinite()).is_nonneg());
    CHECK(poly({{5, 1}}, Period::finite(2)).is_nonneg()); // q^5 -> q
    CHECK(poly({{5, 1}}, Period::finite(2)) == poly({{1, 1}}, Period::finite(2)));
}

TEST_CASE("period reduction") {
    CHECK(poly({{0, 1}, {5, 1}}, Period::infinite()).reduced_to(Period::finite(1)) ==
          poly({{0, 2}}, Period::finite(1)));
    CHECK(poly({{0, 1}, {3, 1}}, Period::finite(6)).reduced_to(Period::finite(3)) ==
          poly({{0, 2}}, Period::finite(3)));
    CHECK_THROWS_AS(poly({{1, 1}}, Period::finite(4)).reduced_to(Period::finite(3)), std::invalid_argument);
    CHECK_THROWS_AS(poly({{1, 1}}, Period::finite(4)).reduced_to(Period::infinite()), std::invalid_argument);
}

TEST_CASE("divide_q_plus_1 at infinite period") {
    Period inf = Period::infinite();
    auto r1 = divide_q_plus_1(poly({{0, 1}, {1, 1}}, inf));
    REQUIRE(r1.quotient.has_value());
    CHECK(*r1.quotient == poly({{0, 1}}, inf));
    CHECK(r1.nonneg_witness);

    auto r2 = divide_q_plus_1(poly({{0, 1}, {1, 2}, {2, 1}}, inf));
    REQUIRE(r2.quotient.has_value());
    CHECK(*r2.quotient == poly({{0, 1}, {1, 1}}, inf));
    CHECK(r2.nonneg_witness);

    // 1 - q + q^2 is not divisible; the oracle agrees and the tail criterion fails
    CoeffPoly f = poly({{0, 1}, {1, -1}, {2, 1}}, inf);
    auto r3 = divide_q_plus_1(f);
    CHECK_FALSE(r3.quotient.has_value());
    CHECK_FALSE(r3.nonneg_witness);
    CoeffPoly q_out(inf);
    CHECK_FALSE(division_oracle(f, q_out));

    // divisible with a negative-coefficient quotient: witness must be false
    // (1+q)(1-q) = 1-q^2
    auto r4 = divide_q_plus_1(poly({{0, 1}, {2, -1}}, inf));
    REQUIRE(r4.quotient.has_value());
    CHECK(*r4.quotient == poly({{0, 1}, {1, -1}}, inf));
    CHECK_FALSE(r4.nonneg_witness);
}

TEST_CASE("divide_q_plus_1 at odd finite period multiplies by the inverse") {
    for (std::int64_t d : {1, 3, 5, 7, 9}) {
        Period p = Period::finite(d);
        // the claimed inverse really multiplies back to 1
        std::vector<std::pair<std::int64_t, Rational>> terms;
        for (std::int64_t i = 0; i < d; ++i) terms.emplace_back(i, Rational(i % 2 == 0 ? 1 : -1, 2));
        CoeffPoly inv = CoeffPoly::normalize(terms, p);
        CHECK(CoeffPoly::one_plus_q(p) * inv == CoeffPoly::constant(Rational(1), p));

        auto r = divide_q_plus_1(CoeffPoly::one_plus_q(p));
        REQUIRE(r.quotient.has_value());
        CHECK(*r.quotient == CoeffPoly::constant(Rational(1), p));
    }
    CHECK_THROWS_AS(divide_q_plus_1(CoeffPoly::constant(Rational(1), Period::finite(2))), std::invalid_argument);
    CHECK_THROWS_AS(divide_q_plus_1(CoeffPoly::constant(Rational(1), Period::finite(4))), std::invalid_argument);
}

TEST_CASE("normalize is idempotent and the cone is closed under + and *") {
    Rng rng(20240801);
    for (int i = 0; i < 300; ++i) {
        Period p = rng.chance(50) ? Period::infinite() : Period::finite(rng.range(1, 9));
        CoeffPoly a = random_poly(rng, p, false);
        std::vector<std::pair<std::int64_t, Rational>> raw(a.coeffs().begin(), a.coeffs().end());
        CHECK(CoeffPoly::normalize(raw, p) == a);

        CoeffPoly x = random_poly(rng, p, true);
        CoeffPoly y = random_poly(rng, p, true);
        CHECK(x.is_nonneg());
        CHECK(y.is_nonneg());
        CHECK((x + y).is_nonneg());
        CHECK((x * y).is_nonneg());
    }
}

TEST_CASE("reduce_period is a ring homomorphism preserving the cone") {
    Rng rng(77);
    for (int i = 0; i < 300; ++i) {
        std::int64_t dprime = rng.range(1, 5);
        bool from_inf = rng.chance(40);
        Period src = from_inf ? Period::infinite() : Period::finite(dprime * rng.range(1, 4));
        Period tgt = Period::finite(dprime);
        CoeffPoly a = random_poly(rng, src, false);
        CoeffPoly b = random_poly(rng, src, false);
        CHECK((a + b).reduced_to(tgt) == a.reduced_to(tgt) + b.reduced_to(tgt));
        CHECK((a * b).reduced_to(tgt) == a.reduced_to(tgt) * b.reduced_to(tgt));

        CoeffPoly c = random_poly(rng, src, true);
        CHECK(c.reduced_to(tgt).is_nonneg());
        // the only nonnegative element reducing to zero is zero
        if (c.reduced_to(tgt).is_zero()) CHECK(c.is_zero());
    }
}

TEST_CASE("division round trip for random nonnegative quotients") {
    Rng rng(4242);
    for (int i = 0; i < 500; ++i) {
        Period p = rng.chance(50) ? Period::infinite() : Period::finite(2 * rng.range(0, 4) + 1);
        CoeffPoly phi = random_poly(rng, p, true);
        CoeffPoly f = CoeffPoly::one_plus_q(p) * phi;
        auto r = divide_q_plus_1(f);
        REQUIRE(r.quotient.has_value());
        CHECK(*r.quotient == phi);
        CHECK(r.nonneg_witness);
        if (p.is_infinite()) {
            CoeffPoly q_out(p);
            REQUIRE(division_oracle(f, q_out));
            CHECK(q_out == phi);
        }
    }
}
