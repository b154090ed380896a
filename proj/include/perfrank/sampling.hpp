#pragma once

// Deterministic random generators for algebra elements, matrices, complexes
// and chain maps.  Complexes are assembled from shifts, sums and cones so
// d^2 = 0 holds by construction; chain maps are drawn from the exact solution
// space of the commuting constraints, so every sample is a genuine chain map.

#include "perf.hpp"
#include "rng.hpp"

namespace perfrank::sampling {

struct GenParams {
    int max_rank = 2;        // largest rank per degree for generated pieces
    int coeff_lo = -2;       // coefficient range for entries
    int coeff_hi = 2;
    unsigned density = 60;   // percent chance an entry or coordinate is filled
};

inline AlgElement random_element(Rng& rng, const AlgebraRef& alg, const GenParams& p = {}) {
    FDAlgebra::Coords c(static_cast<std::size_t>(alg->dim), Rational(0));
    for (int i = 0; i < alg->dim; ++i)
        if (rng.chance(p.density))
            c[static_cast<std::size_t>(i)] = fieldops::canon(alg->field, Rational(rng.range(p.coeff_lo, p.coeff_hi)));
    return AlgElement(alg, c);
}

inline MatrixOverA random_matrix(Rng& rng, const AlgebraRef& alg, int rows, int cols, const GenParams& p = {}) {
    MatrixOverA m(alg, rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
            if (rng.chance(p.density)) m.at(i, j) = random_element(rng, alg, p);
    return m;
}

// invertible square matrix: product of transvections, permutations and
// (scalar + nilpotent-ish) diagonal units
inline MatrixOverA random_invertible(Rng& rng, const AlgebraRef& alg, int n, const GenParams& p = {}) {
    MatrixOverA e = MatrixOverA::identity(alg, n);
    if (n == 0) return e;
    for (int step = 0; step < 4; ++step) {
        MatrixOverA t = MatrixOverA::identity(alg, n);
        switch (rng.below(3)) {
            case 0: { // transvection
                if (n >= 2) {
                    int i = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
                    int j = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
                    if (i != j) t.at(i, j) = random_element(rng, alg, p);
                }
                break;
            }
            case 1: { // swap two rows
                if (n >= 2) {
                    int i = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
                    int j = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
                    if (i != j) {
                        t.at(i, i) = AlgElement::zero(alg);
                        t.at(j, j) = AlgElement::zero(alg);
                        t.at(i, j) = AlgElement::one(alg);
                        t.at(j, i) = AlgElement::one(alg);
                    }
                }
                break;
            }
            default: { // nonzero scalar on one diagonal slot
                int d = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
                std::int64_t s = rng.chance(50) ? 2 : -1;
                t.at(d, d) = AlgElement::one(alg).scaled(fieldops::canon(alg->field, Rational(s)));
                break;
            }
        }
        e = MatrixOverA::compose(e, t);
    }
    return e;
}

// solve the chain-map constraints over the ground field and return a random
// element of the solution space
inline ChainMap random_chain_map(Rng& rng, const FreeComplex& x, const FreeComplex& y,
                                 const GenParams& p = {}) {
    const AlgebraRef& alg = x.algebra();
    if (alg != y.algebra()) throw std::invalid_argument("chain map across different algebras");
    const int m = alg->dim;
    struct Slot { int degree, row, col; };
    std::vector<Slot> slots;
    std::map<std::tuple<int, int, int>, int> slot_of;
    for (const auto& [n, r] : x.ranks())
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < y.rank_at(n); ++j) {
                slot_of[{n, i, j}] = static_cast<int>(slots.size());
                slots.push_back({n, i, j});
            }
    if (slots.empty()) return ChainMap::zero(x, y);
    const int unknowns = static_cast<int>(slots.size()) * m;

    auto slot_base = [&](int degree, int row, int col) -> int {
        auto it = slot_of.find({degree, row, col});
        return it == slot_of.end() ? -1 : it->second * m;
    };

    std::vector<std::vector<Rational>> rows;
    for (const auto& [n, xr] : x.ranks()) {
        int a = xr, b = y.rank_at(n - 1);
        if (a == 0 || b == 0) continue;
        MatrixOverA dx = x.diff(n);
        MatrixOverA dy = y.diff(n);
        for (int i = 0; i < a; ++i)
            for (int k = 0; k < b; ++k)
                for (int coord = 0; coord < m; ++coord) {
                    std::vector<Rational> row(static_cast<std::size_t>(unknowns), Rational(0));
                    bool nontrivial = false;
                    for (int j = 0; j < x.rank_at(n - 1); ++j) {
                        int base = slot_base(n - 1, j, k);
                        if (base < 0) continue;
                        ExactMatrix rm = alg->right_mult_matrix(dx.at(i, j).coords);
                        for (int c = 0; c < m; ++c) {
                            const Rational& v = rm.at(c, coord);
                            if (!v.is_zero()) {
                                row[static_cast<std::size_t>(base + c)] =
                                    fieldops::add(alg->field, row[static_cast<std::size_t>(base + c)], v);
                                nontrivial = true;
                            }
                        }
                    }
                    for (int j = 0; j < y.rank_at(n); ++j) {
                        int base = slot_base(n, i, j);
                        if (base < 0) continue;
                        ExactMatrix lm = alg->left_mult_matrix(dy.at(j, k).coords);
                        for (int c = 0; c < m; ++c) {
                            const Rational& v = lm.at(coord, c);
                            if (!v.is_zero()) {
                                row[static_cast<std::size_t>(base + c)] =
                                    fieldops::sub(alg->field, row[static_cast<std::size_t>(base + c)], v);
                                nontrivial = true;
                            }
                        }
                    }
                    if (nontrivial) rows.push_back(std::move(row));
                }
    }

    std::vector<Rational> sol(static_cast<std::size_t>(unknowns), Rational(0));
    if (rows.empty()) {
        for (auto& v : sol)
            if (rng.chance(p.density)) v = fieldops::canon(alg->field, Rational(rng.range(p.coeff_lo, p.coeff_hi)));
    } else {
        ExactMatrix constraint(alg->field, static_cast<int>(rows.size()), unknowns);
        for (std::size_t r = 0; r < rows.size(); ++r)
            for (int c = 0; c < unknowns; ++c)
                constraint.at(static_cast<int>(r), c) = rows[r][static_cast<std::size_t>(c)];
        for (const auto& kb : kernel_basis(constraint)) {
            Rational coeff = fieldops::canon(alg->field, Rational(rng.range(p.coeff_lo, p.coeff_hi)));
            if (coeff.is_zero()) continue;
            for (int c = 0; c < unknowns; ++c)
                sol[static_cast<std::size_t>(c)] =
                    fieldops::add(alg->field, sol[static_cast<std::size_t>(c)],
                                  fieldops::mul(alg->field, coeff, kb[static_cast<std::size_t>(c)]));
        }
    }

    std::map<int, MatrixOverA> comps;
    for (std::size_t s = 0; s < slots.size(); ++s) {
        const Slot& sl = slots[s];
        auto it = comps.find(sl.degree);
        if (it == comps.end())
            it = comps.emplace(sl.degree, MatrixOverA(alg, x.rank_at(sl.degree), y.rank_at(sl.degree))).first;
        FDAlgebra::Coords c(sol.begin() + static_cast<long>(s) * m, sol.begin() + static_cast<long>(s + 1) * m);
        it->second.at(sl.row, sl.col) = AlgElement(alg, std::move(c));
    }
    return ChainMap(x, y, std::move(comps));
}

inline FreeComplex random_complex(Rng& rng, const AlgebraRef& alg, int max_degrees, const GenParams& p = {}) {
    auto piece = [&](Rng& r) {
        int deg = r.range(-1, 1);
        if (r.chance(40)) return one_term(alg, static_cast<int>(1 + r.below(static_cast<std::uint64_t>(p.max_rank))), deg);
        return two_term(random_matrix(r, alg, static_cast<int>(1 + r.below(static_cast<std::uint64_t>(p.max_rank))),
                                      static_cast<int>(1 + r.below(static_cast<std::uint64_t>(p.max_rank))), p),
                        deg);
    };
    FreeComplex x = piece(rng);
    int extra = static_cast<int>(rng.below(static_cast<std::uint64_t>(std::max(1, max_degrees - 1))));
    for (int i = 0; i < extra; ++i) {
        switch (rng.below(3)) {
            case 0: x = direct_sum(x, piece(rng)); break;
            case 1: x = shift(x, rng.range(-1, 1)); break;
            default: {
                FreeComplex y = piece(rng);
                x = cone(random_chain_map(rng, x, y, p)).cone;
                break;
            }
        }
    }
    return x;
}

// conjugate each degree by an invertible matrix over A; the result is
// isomorphic to x via the returned chain map
struct ConjugatedComplex {
    FreeComplex complex;
    ChainMap iso; // x -> complex, degreewise invertible
};

inline ConjugatedComplex conjugated_with_iso(Rng& rng, const FreeComplex& x, const GenParams& p = {}) {
    const AlgebraRef& alg = x.algebra();
    std::map<int, int> ranks = x.ranks();

    // build invertibles with explicit inverses: compose elementary pieces
    struct Pair { MatrixOverA fwd, inv; };
    std::map<int, Pair> conj;
    for (const auto& [n, r] : ranks) {
        MatrixOverA fwd = MatrixOverA::identity(alg, r);
        MatrixOverA inv = MatrixOverA::identity(alg, r);
        for (int step = 0; step < 3; ++step) {
            MatrixOverA t = MatrixOverA::identity(alg, r);
            MatrixOverA tinv = MatrixOverA::identity(alg, r);
            if (r >= 2 && rng.chance(70)) {
                int i = static_cast<int>(rng.below(static_cast<std::uint64_t>(r)));
                int j = static_cast<int>(rng.below(static_cast<std::uint64_t>(r)));
                if (i != j) {
                    AlgElement a = random_element(rng, alg, p);
                    t.at(i, j) = a;
                    tinv.at(i, j) = a.scaled(Rational(-1));
                }
            } else {
                int d = static_cast<int>(rng.below(static_cast<std::uint64_t>(r)));
                std::int64_t s = rng.chance(50) ? 2 : -1;
                t.at(d, d) = AlgElement::one(alg).scaled(fieldops::canon(alg->field, Rational(s)));
                tinv.at(d, d) = AlgElement::one(alg).scaled(fieldops::canon(alg->field, Rational(1, s)));
            }
            fwd = MatrixOverA::compose(fwd, t);
            inv = MatrixOverA::compose(tinv, inv);
        }
        conj.emplace(n, Pair{fwd, inv});
    }

    std::map<int, MatrixOverA> diffs;
    for (const auto& [n, r] : ranks) {
        (void)r;
        if (x.rank_at(n) == 0 || x.rank_at(n - 1) == 0) continue;
        // new differential: E_n^{-1} then d then E_{n-1}
        MatrixOverA d = MatrixOverA::compose(conj.at(n).inv, x.diff(n));
        d = MatrixOverA::compose(d, conj.at(n - 1).fwd);
        diffs.emplace(n, std::move(d));
    }
    FreeComplex out(alg, std::move(ranks), std::move(diffs));
    std::map<int, MatrixOverA> iso_comps;
    for (const auto& [n, pr] : conj) iso_comps.emplace(n, pr.fwd);
    ChainMap iso(x, out, std::move(iso_comps));
    return ConjugatedComplex{std::move(out), std::move(iso)};
}

inline FreeComplex conjugated_complex(Rng& rng, const FreeComplex& x, const GenParams& p = {}) {
    return conjugated_with_iso(rng, x, p).complex;
}

// contractible complexes: sums of shifted cones of identities, optionally
// disguised by conjugation
inline FreeComplex random_contractible(Rng& rng, const AlgebraRef& alg, const GenParams& p = {}) {
    FreeComplex x = cone(ChainMap::identity(random_complex(rng, alg, 2, p))).cone;
    if (rng.chance(60))
        x = direct_sum(x, cone(ChainMap::identity(one_term(alg, static_cast<int>(1 + rng.below(2)), rng.range(-1, 1)))).cone);
    return conjugated_complex(rng, x, p);
}

} // namespace perfrank::sampling
