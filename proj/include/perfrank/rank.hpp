#pragma once

// Rank functions on perfect complexes: Sylvester ranks generated by a
// homomorphism into a matrix ring, their q-polynomial derived extension,
// periodic morphism ranks obtained by division by (1+q), fullness and
// kernel classification, idempotent ranks, full square submatrices,
// graded-dimension ranks over a field, and the localizing diagnostic.

#include "coeff.hpp"
#include "homalg.hpp"
#include "perf.hpp"
#include "sampling.hpp"

namespace perfrank {

class SylvesterRank {
  public:
    explicit SylvesterRank(MatAlgebraHom phi) : hom_(std::move(phi)) {
        auto rep = verify_hom(hom_);
        if (!rep.valid())
            throw std::invalid_argument("hom fails verification with " + std::to_string(rep.violations.size()) +
                                        " violated constraints");
    }

    const MatAlgebraHom& hom() const { return hom_; }
    const AlgebraRef& algebra() const { return hom_.source; }
    int n() const { return hom_.n; }

  private:
    MatAlgebraHom hom_;
};

// rank over K of the entrywise image, divided by the matrix size of the target
inline Rational sylvester_morphism_rank(const SylvesterRank& sigma, const MatrixOverA& f) {
    if (f.algebra() != sigma.algebra()) throw std::invalid_argument("matrix over a different algebra");
    return Rational(rank(f.flatten_hom(sigma.hom())), sigma.n());
}

// module rank through a presentation:  rho(M) = g - rho(relations)
inline Rational sylvester_module_rank(const SylvesterRank& sigma, const FDModule& m) {
    if (m.algebra() != sigma.algebra()) throw std::invalid_argument("module over a different algebra");
    Presentation p = presentation(m);
    return Rational(p.generators) - sylvester_morphism_rank(sigma, p.relations);
}

// The unique extension to complexes:
//   rho(X) = sum_n ( r_n - rho(d_n) - rho(d_{n+1}) ) q^n   at infinite period.
inline CoeffPoly derived_object_rank(const SylvesterRank& sigma, const FreeComplex& x) {
    if (!x.empty() && x.algebra() != sigma.algebra())
        throw std::invalid_argument("complex over a different algebra");
    std::vector<std::pair<std::int64_t, Rational>> terms;
    for (const auto& [n, r] : x.ranks()) {
        Rational coeff(r);
        if (x.rank_at(n - 1) > 0) coeff -= sylvester_morphism_rank(sigma, x.diff(n));
        if (x.rank_at(n + 1) > 0) coeff -= sylvester_morphism_rank(sigma, x.diff(n + 1));
        terms.emplace_back(n, coeff);
    }
    CoeffPoly out = CoeffPoly::normalize(terms, Period::infinite());
    if (!out.is_nonneg()) throw std::logic_error("object rank left the nonnegative cone");
    return out;
}

inline void require_morphism_period(Period d) {
    if (d.is_finite() && d.value() > 1 && !d.is_odd())
        throw std::invalid_argument("morphism ranks need period 1, odd, or infinite");
}

// rho(f) = ( rho(Y) - rho(cone f) + q rho(X) ) / (q + 1), reduced to period d.
inline CoeffPoly derived_morphism_rank(const SylvesterRank& sigma, const ChainMap& f, Period d) {
    require_morphism_period(d);
    CoeffPoly rx = derived_object_rank(sigma, f.source()).reduced_to(d);
    CoeffPoly ry = derived_object_rank(sigma, f.target()).reduced_to(d);
    CoeffPoly rc = derived_object_rank(sigma, cone(f).cone).reduced_to(d);
    CoeffPoly numerator = ry - rc + rx.shifted(1);
    auto division = divide_q_plus_1(numerator);
    if (!division.quotient)
        throw std::logic_error("(q+1) division failed on a rank numerator; rank data inconsistent");
    if (!division.quotient->is_nonneg()) throw std::logic_error("morphism rank left the nonnegative cone");
    return *division.quotient;
}

inline CoeffPoly idempotent_rank(const SylvesterRank& sigma, const IdempotentObject& p, Period d) {
    // strict idempotency is enforced by the IdempotentObject constructor;
    // the rank of the identity of (X, e) is rho(e)
    return derived_morphism_rank(sigma, p.endo, d);
}

struct MorphismClassification {
    CoeffPoly rank_map, rank_source, rank_target;
    bool left_full = false, right_full = false, full = false;
};

inline MorphismClassification classify_morphism(const SylvesterRank& sigma, const ChainMap& f, Period d) {
    MorphismClassification out{derived_morphism_rank(sigma, f, d),
                               derived_object_rank(sigma, f.source()).reduced_to(d),
                               derived_object_rank(sigma, f.target()).reduced_to(d)};
    out.left_full = (out.rank_map == out.rank_source);
    out.right_full = (out.rank_map == out.rank_target);
    out.full = out.left_full && out.right_full;
    return out;
}

struct ObjectClassification {
    CoeffPoly rank;
    bool in_kernel = false;
};

inline ObjectClassification classify_object(const SylvesterRank& sigma, const FreeComplex& x, Period d) {
    ObjectClassification out{derived_object_rank(sigma, x).reduced_to(d), false};
    out.in_kernel = out.rank.is_zero();
    return out;
}

inline ObjectClassification classify_object(const SylvesterRank& sigma, const IdempotentObject& p, Period d) {
    ObjectClassification out{idempotent_rank(sigma, p, d), false};
    out.in_kernel = out.rank.is_zero();
    return out;
}

// ---------------------------------------------------------------------------
// Full square submatrices

struct SubmatrixWitness {
    bool on_base_change = false; // witness found in phi(F) rather than F itself
    std::vector<int> row_set, col_set;
    Rational rank_value;         // sylvester rank of the witness (= rank of F)
};

namespace rank_detail {

inline bool next_subset(std::vector<int>& idx, int limit) {
    int k = static_cast<int>(idx.size());
    for (int i = k - 1; i >= 0; --i) {
        if (idx[static_cast<std::size_t>(i)] < limit - (k - i)) {
            ++idx[static_cast<std::size_t>(i)];
            for (int j = i + 1; j < k; ++j)
                idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
            return true;
        }
    }
    return false;
}

} // namespace rank_detail

// Exhaustive search for a square submatrix realizing the full rank of F.
// When rho(F) is an integer the witness is a k x k submatrix of F itself
// with sylvester rank k; otherwise the search runs over the base-changed
// matrix, where an (n rho) x (n rho) submatrix of full rank always exists.
inline SubmatrixWitness full_square_submatrix(const SylvesterRank& sigma, const MatrixOverA& f) {
    SubmatrixWitness out;
    Rational rho = sylvester_morphism_rank(sigma, f);
    out.rank_value = rho;
    if (rho.is_zero()) return out; // empty witness: the 0 x 0 submatrix

    if (rho.is_integer()) {
        int k = static_cast<int>(rho.num());
        std::vector<int> rs(static_cast<std::size_t>(k)), cs(static_cast<std::size_t>(k));
        for (int i = 0; i < k; ++i) rs[static_cast<std::size_t>(i)] = i;
        do {
            for (int i = 0; i < k; ++i) cs[static_cast<std::size_t>(i)] = i;
            do {
                if (sylvester_morphism_rank(sigma, f.submatrix(rs, cs)) == rho) {
                    out.row_set = rs;
                    out.col_set = cs;
                    return out;
                }
            } while (rank_detail::next_subset(cs, f.cols()));
        } while (rank_detail::next_subset(rs, f.rows()));
        // an integer value of a non-integral rank function (n >= 2) need not
        // be witnessed inside F itself; fall through to the base change,
        // where a full square submatrix always exists
    }

    ExactMatrix big = f.flatten_hom(sigma.hom());
    int k = rank(big);
    out.on_base_change = true;
    std::vector<int> rs(static_cast<std::size_t>(k)), cs(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) rs[static_cast<std::size_t>(i)] = i;
    do {
        for (int i = 0; i < k; ++i) cs[static_cast<std::size_t>(i)] = i;
        do {
            if (rank(big.submatrix(rs, cs)) == k) {
                out.row_set = rs;
                out.col_set = cs;
                return out;
            }
        } while (rank_detail::next_subset(cs, big.cols()));
    } while (rank_detail::next_subset(rs, big.rows()));
    throw std::logic_error("no full submatrix found at the computed rank");
}

// ---------------------------------------------------------------------------
// Graded dimension rank over a field

inline CoeffPoly graded_dimension_rank(const FieldComplex& x) {
    std::vector<std::pair<std::int64_t, Rational>> terms;
    for (const auto& [n, h] : x.homology_dims()) terms.emplace_back(n, Rational(h));
    return CoeffPoly::normalize(terms, Period::infinite());
}

// ---------------------------------------------------------------------------
// Localizing diagnostic

struct LocalizingReport {
    bool normalized = false;            // rho(A) = 1
    bool scaled_integral = false;       // n * rho integral on every sampled matrix
    int samples = 0;
    EpiCheckReport epi;
    int depth = 0;
    bool consistent = false;            // consistent with localizing, to the stated depth
    int obstruction_degree = 0;         // smallest Tor degree obstructing, 0 if none
    bool multiplication_obstructed = false;
};

// Bundles the evidence for sigma being induced by a localization: the rank
// is normalized, the n-scaled rank is integral on sampled matrices, and the
// hom passes the depth-bounded homological-epimorphism check.  A positive
// verdict certifies consistency to the stated depth only; a Tor obstruction
// refutes.
inline LocalizingReport localizing_diagnostic(const SylvesterRank& sigma, int depth,
                                              int samples = 25, std::uint64_t seed = 1) {
    if (depth < 1) throw std::invalid_argument("diagnostic depth must be >= 1");
    LocalizingReport rep;
    rep.depth = depth;

    rep.normalized =
        derived_object_rank(sigma, one_term(sigma.algebra(), 1, 0)) == CoeffPoly::constant(Rational(1), Period::infinite());

    Rng rng(seed);
    rep.scaled_integral = true;
    for (int i = 0; i < samples; ++i) {
        MatrixOverA f = sampling::random_matrix(rng, sigma.algebra(), static_cast<int>(1 + rng.below(3)),
                                                static_cast<int>(1 + rng.below(3)));
        Rational scaled = sylvester_morphism_rank(sigma, f) * Rational(sigma.n());
        if (!scaled.is_integer()) rep.scaled_integral = false;
    }
    rep.samples = samples;

    rep.epi = homological_epi_check(sigma.hom(), depth);
    rep.multiplication_obstructed = !rep.epi.mult_bijective;
    rep.obstruction_degree = rep.epi.first_obstruction;
    rep.consistent = rep.normalized && rep.scaled_integral && rep.epi.passes;
    return rep;
}

} // namespace perfrank
