#pragma once

// Shared builders for the worked examples: the 4-dimensional two-vertex
// quiver algebra, its two matrix-ring homs, the dual numbers, and the
// 5-dimensional rectangular-band monoid algebra.

#include <perfrank/fdalg.hpp>
#include <perfrank/homalg.hpp>

namespace testsupport {

using namespace perfrank;

// Path algebra of 1 <--> 2 with both length-2 compositions killed.
inline AlgebraRef small_algebra(FieldSpec f = FieldSpec::rationals()) {
    std::vector<QuiverArrow> arrows = {{"alpha1", "1", "2"}, {"alpha2", "2", "1"}};
    std::vector<std::vector<PathTerm>> rels = {
        {PathTerm{{"alpha1", "alpha2"}, "", Rational(1)}},
        {PathTerm{{"alpha2", "alpha1"}, "", Rational(1)}},
    };
    return from_quiver(f, {"1", "2"}, arrows, rels, 2);
}

// e1 |-> E11, e2 |-> E22, alpha2 |-> E12, alpha1 |-> 0
inline MatAlgebraHom small_hom_m2(const AlgebraRef& alg) {
    FieldSpec f = alg->field;
    MatAlgebraHom phi;
    phi.source = alg;
    phi.n = 2;
    phi.target_field = f;
    phi.images.assign(4, ExactMatrix(f, 2, 2));
    phi.images[static_cast<std::size_t>(alg->basis_index("e_1"))].at(0, 0) = Rational(1);
    phi.images[static_cast<std::size_t>(alg->basis_index("e_2"))].at(1, 1) = Rational(1);
    phi.images[static_cast<std::size_t>(alg->basis_index("alpha2"))].at(0, 1) = Rational(1);
    return phi;
}

// augmentation onto the vertex-1 component: e1 |-> 1, everything else |-> 0
inline MatAlgebraHom small_hom_aug(const AlgebraRef& alg) {
    FieldSpec f = alg->field;
    MatAlgebraHom phi;
    phi.source = alg;
    phi.n = 1;
    phi.target_field = f;
    phi.images.assign(4, ExactMatrix(f, 1, 1));
    phi.images[static_cast<std::size_t>(alg->basis_index("e_1"))].at(0, 0) = Rational(1);
    return phi;
}

// k[x]/(x^2) as a one-loop quiver algebra; basis {e_v, x}
inline AlgebraRef dual_numbers(FieldSpec f = FieldSpec::rationals()) {
    std::vector<QuiverArrow> arrows = {{"x", "v", "v"}};
    std::vector<std::vector<PathTerm>> rels = {{PathTerm{{"x", "x"}, "", Rational(1)}}};
    return from_quiver(f, {"v"}, arrows, rels, 1);
}

inline MatAlgebraHom dual_residue_hom(const AlgebraRef& dual) {
    MatAlgebraHom phi;
    phi.source = dual;
    phi.n = 1;
    phi.target_field = dual->field;
    phi.images.assign(2, ExactMatrix(dual->field, 1, 1));
    phi.images[static_cast<std::size_t>(dual->basis_index("e_v"))].at(0, 0) = Rational(1);
    return phi;
}

// monoid algebra of {1, x_ij} with x_ij x_kl = x_il
inline AlgebraRef fiedorowicz_algebra(FieldSpec f = FieldSpec::rationals()) {
    std::vector<std::string> basis = {"one", "x11", "x12", "x21", "x22"};
    auto idx = [&](int i, int j) { return 1 + (i - 1) * 2 + (j - 1); };
    const int m = 5;
    std::vector<std::vector<FDAlgebra::Coords>> prod(
        5, std::vector<FDAlgebra::Coords>(5, FDAlgebra::Coords(m, Rational(0))));
    auto unitvec = FDAlgebra::Coords(m, Rational(0));
    unitvec[0] = Rational(1);
    for (int a = 0; a < m; ++a) {
        prod[0][static_cast<std::size_t>(a)][static_cast<std::size_t>(a)] = Rational(1);
        prod[static_cast<std::size_t>(a)][0][static_cast<std::size_t>(a)] = Rational(1);
    }
    for (int i = 1; i <= 2; ++i)
        for (int j = 1; j <= 2; ++j)
            for (int k = 1; k <= 2; ++k)
                for (int l = 1; l <= 2; ++l)
                    prod[static_cast<std::size_t>(idx(i, j))][static_cast<std::size_t>(idx(k, l))]
                        [static_cast<std::size_t>(idx(i, l))] = Rational(1);
    return from_structure_constants(f, basis, unitvec, prod);
}

// one-dimensional module along a 1x1 hom-like assignment
inline FDModule one_dim_module(const AlgebraRef& alg, const std::vector<std::string>& acting_as_one, Side side) {
    std::vector<ExactMatrix> act(static_cast<std::size_t>(alg->dim), ExactMatrix(alg->field, 1, 1));
    for (const auto& label : acting_as_one)
        act[static_cast<std::size_t>(alg->basis_index(label))].at(0, 0) = Rational(1);
    return FDModule(alg, 1, side, std::move(act));
}

// simple module at vertex 1 of the small algebra
inline FDModule small_s1(const AlgebraRef& alg, Side side = Side::Right) {
    return one_dim_module(alg, {"e_1"}, side);
}
inline FDModule small_s2(const AlgebraRef& alg, Side side = Side::Right) {
    return one_dim_module(alg, {"e_2"}, side);
}

// trivial module of the monoid algebra: every monoid element acts as 1
inline FDModule fiedorowicz_trivial(const AlgebraRef& alg, Side side) {
    return one_dim_module(alg, {"one", "x11", "x12", "x21", "x22"}, side);
}

inline AlgebraRef ground_field_algebra(FieldSpec f = FieldSpec::rationals()) {
    return from_structure_constants(f, {"1"}, {Rational(1)}, {{{Rational(1)}}});
}

inline MatAlgebraHom identity_hom(const AlgebraRef& ground) {
    MatAlgebraHom phi;
    phi.source = ground;
    phi.n = 1;
    phi.target_field = ground->field;
    phi.images.assign(1, ExactMatrix::identity(ground->field, 1));
    return phi;
}

} // namespace testsupport
