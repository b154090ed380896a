#pragma once

// Bounded complexes of finite-rank free modules over a finite-dimensional
// algebra, chain maps between them, and the triangle constructors: shift,
// direct sum, brutal truncation and mapping cone.
//
// Grading is homological: d_n maps degree n to degree n-1.  Shifting by k
// multiplies differentials by (-1)^k and the cone differential has block
// form [[-d^X, 0], [f, d^Y]]; with these signs cone(id) is strictly
// contractible.

#include <map>
#include <set>
#include <vector>

#include "amat.hpp"

namespace perfrank {

class FreeComplex {
  public:
    explicit FreeComplex(AlgebraRef alg) : alg_(std::move(alg)) {}
    FreeComplex(AlgebraRef alg, std::map<int, int> ranks, std::map<int, MatrixOverA> diffs)
        : alg_(std::move(alg)), ranks_(std::move(ranks)), diffs_(std::move(diffs)) {
        for (auto it = ranks_.begin(); it != ranks_.end();) {
            if (it->second < 0) throw std::invalid_argument("negative rank");
            it = it->second == 0 ? ranks_.erase(it) : std::next(it);
        }
        for (const auto& [n, d] : diffs_) {
            if (d.algebra() != alg_) throw std::invalid_argument("differential over wrong algebra");
            if (d.rows() != rank_at(n) || d.cols() != rank_at(n - 1))
                throw std::invalid_argument("differential shape mismatch at degree " + std::to_string(n));
        }
    }

    const AlgebraRef& algebra() const { return alg_; }
    const std::map<int, int>& ranks() const { return ranks_; }
    int rank_at(int n) const {
        auto it = ranks_.find(n);
        return it == ranks_.end() ? 0 : it->second;
    }
    bool empty() const { return ranks_.empty(); }
    int lowest_degree() const { return empty() ? 0 : ranks_.begin()->first; }
    int highest_degree() const { return empty() ? 0 : ranks_.rbegin()->first; }

    // Differential leaving degree n; zero matrix of correct shape if absent.
    MatrixOverA diff(int n) const {
        auto it = diffs_.find(n);
        if (it != diffs_.end()) return it->second;
        return MatrixOverA(alg_, rank_at(n), rank_at(n - 1));
    }

    std::vector<std::string> validate() const {
        std::vector<std::string> problems;
        for (const auto& [n, d] : diffs_) {
            (void)d;
            if (rank_at(n) == 0 || rank_at(n - 1) == 0) continue;
            MatrixOverA sq = MatrixOverA::compose(diff(n + 1), diff(n));
            if (rank_at(n + 1) > 0 && !sq.is_zero())
                problems.push_back("d_" + std::to_string(n) + " o d_" + std::to_string(n + 1) + " != 0");
        }
        return problems;
    }

    friend bool operator==(const FreeComplex& x, const FreeComplex& y) {
        if (x.alg_ != y.alg_ || x.ranks_ != y.ranks_) return false;
        std::set<int> degs;
        for (const auto& [n, _] : x.diffs_) degs.insert(n);
        for (const auto& [n, _] : y.diffs_) degs.insert(n);
        for (int n : degs)
            if (x.diff(n) != y.diff(n)) return false;
        return true;
    }
    friend bool operator!=(const FreeComplex& x, const FreeComplex& y) { return !(x == y); }

  private:
    AlgebraRef alg_;
    std::map<int, int> ranks_;
    std::map<int, MatrixOverA> diffs_;
};

// Single free module A^r placed in one degree.
inline FreeComplex one_term(const AlgebraRef& alg, int r, int degree) {
    if (r == 0) return FreeComplex(alg);
    return FreeComplex(alg, {{degree, r}}, {});
}

// Two-term complex A^a -> A^b concentrated in degrees top, top-1.
inline FreeComplex two_term(const MatrixOverA& f, int top_degree) {
    std::map<int, int> ranks;
    std::map<int, MatrixOverA> diffs;
    if (f.rows() > 0) ranks[top_degree] = f.rows();
    if (f.cols() > 0) ranks[top_degree - 1] = f.cols();
    if (f.rows() > 0 && f.cols() > 0) diffs.emplace(top_degree, f);
    return FreeComplex(f.algebra(), std::move(ranks), std::move(diffs));
}

inline FreeComplex shift(const FreeComplex& x, int k) {
    std::map<int, int> ranks;
    std::map<int, MatrixOverA> diffs;
    for (const auto& [n, r] : x.ranks()) ranks[n + k] = r;
    bool flip = (k % 2) != 0;
    for (const auto& [n, r] : x.ranks()) {
        (void)r;
        if (x.rank_at(n) > 0 && x.rank_at(n - 1) > 0) {
            MatrixOverA d = x.diff(n);
            diffs.emplace(n + k, flip ? d.negated() : d);
        }
    }
    return FreeComplex(x.algebra(), std::move(ranks), std::move(diffs));
}

inline FreeComplex direct_sum(const FreeComplex& x, const FreeComplex& y) {
    if (x.algebra() != y.algebra()) throw std::invalid_argument("direct sum across different algebras");
    std::map<int, int> ranks;
    std::map<int, MatrixOverA> diffs;
    std::set<int> degs;
    for (const auto& [n, r] : x.ranks()) { ranks[n] += r; degs.insert(n); }
    for (const auto& [n, r] : y.ranks()) { ranks[n] += r; degs.insert(n); }
    for (int n : degs) {
        int rows = x.rank_at(n) + y.rank_at(n);
        int cols = x.rank_at(n - 1) + y.rank_at(n - 1);
        if (rows == 0 || cols == 0) continue;
        MatrixOverA d(x.algebra(), rows, cols);
        MatrixOverA dx = x.diff(n), dy = y.diff(n);
        for (int r = 0; r < dx.rows(); ++r)
            for (int c = 0; c < dx.cols(); ++c) d.at(r, c) = dx.at(r, c);
        for (int r = 0; r < dy.rows(); ++r)
            for (int c = 0; c < dy.cols(); ++c) d.at(x.rank_at(n) + r, x.rank_at(n - 1) + c) = dy.at(r, c);
        diffs.emplace(n, std::move(d));
    }
    return FreeComplex(x.algebra(), std::move(ranks), std::move(diffs));
}

struct DegreeInterval {
    // closed interval [lo, hi]; either side may be unbounded
    std::optional<int> lo, hi;
    bool contains(int n) const { return (!lo || n >= *lo) && (!hi || n <= *hi); }
};

inline FreeComplex brutal_truncate(const FreeComplex& x, DegreeInterval iv) {
    std::map<int, int> ranks;
    std::map<int, MatrixOverA> diffs;
    for (const auto& [n, r] : x.ranks())
        if (iv.contains(n)) ranks[n] = r;
    for (const auto& [n, r] : x.ranks()) {
        (void)r;
        if (iv.contains(n) && iv.contains(n - 1) && x.rank_at(n) > 0 && x.rank_at(n - 1) > 0)
            diffs.emplace(n, x.diff(n));
    }
    return FreeComplex(x.algebra(), std::move(ranks), std::move(diffs));
}

class ChainMap {
  public:
    ChainMap(FreeComplex source, FreeComplex target, std::map<int, MatrixOverA> components)
        : source_(std::move(source)), target_(std::move(target)), comps_(std::move(components)) {
        if (source_.algebra() != target_.algebra()) throw std::invalid_argument("chain map across different algebras");
        for (const auto& [n, f] : comps_) {
            if (f.algebra() != source_.algebra()) throw std::invalid_argument("component over wrong algebra");
            if (f.rows() != source_.rank_at(n) || f.cols() != target_.rank_at(n))
                throw std::invalid_argument("component shape mismatch at degree " + std::to_string(n));
        }
    }

    static ChainMap zero(const FreeComplex& x, const FreeComplex& y) { return ChainMap(x, y, {}); }
    static ChainMap identity(const FreeComplex& x) {
        std::map<int, MatrixOverA> comps;
        for (const auto& [n, r] : x.ranks()) comps.emplace(n, MatrixOverA::identity(x.algebra(), r));
        return ChainMap(x, x, std::move(comps));
    }

    const FreeComplex& source() const { return source_; }
    const FreeComplex& target() const { return target_; }
    const AlgebraRef& algebra() const { return source_.algebra(); }

    MatrixOverA component(int n) const {
        auto it = comps_.find(n);
        if (it != comps_.end()) return it->second;
        return MatrixOverA(source_.algebra(), source_.rank_at(n), target_.rank_at(n));
    }

    bool commutes_with_differentials() const {
        std::set<int> degs;
        for (const auto& [n, _] : source_.ranks()) { degs.insert(n); degs.insert(n + 1); }
        for (const auto& [n, _] : target_.ranks()) { degs.insert(n); degs.insert(n + 1); }
        for (int n : degs) {
            MatrixOverA via_source = MatrixOverA::compose(source_.diff(n), component(n - 1));
            MatrixOverA via_target = MatrixOverA::compose(component(n), target_.diff(n));
            if (via_source != via_target) return false;
        }
        return true;
    }

    static ChainMap compose(const ChainMap& first, const ChainMap& then) {
        if (first.target() != then.source()) throw std::invalid_argument("chain maps not composable");
        std::map<int, MatrixOverA> comps;
        for (const auto& [n, r] : first.source_.ranks()) {
            (void)r;
            comps.emplace(n, MatrixOverA::compose(first.component(n), then.component(n)));
        }
        return ChainMap(first.source_, then.target_, std::move(comps));
    }

    friend ChainMap operator+(const ChainMap& f, const ChainMap& g) {
        if (f.source_ != g.source_ || f.target_ != g.target_)
            throw std::invalid_argument("chain map sum needs equal source and target");
        std::map<int, MatrixOverA> comps;
        std::set<int> degs;
        for (const auto& [n, _] : f.comps_) degs.insert(n);
        for (const auto& [n, _] : g.comps_) degs.insert(n);
        for (int n : degs) comps.emplace(n, f.component(n) + g.component(n));
        return ChainMap(f.source_, f.target_, std::move(comps));
    }
    ChainMap scaled(const Rational& s) const {
        std::map<int, MatrixOverA> comps;
        for (const auto& [n, m] : comps_) comps.emplace(n, m.scaled(s));
        return ChainMap(source_, target_, std::move(comps));
    }

    ChainMap shifted(int k) const {
        std::map<int, MatrixOverA> comps;
        for (const auto& [n, m] : comps_) comps.emplace(n + k, m);
        return ChainMap(shift(source_, k), shift(target_, k), std::move(comps));
    }

    // Degreewise block sum.
    static ChainMap direct_sum(const ChainMap& f, const ChainMap& g) {
        FreeComplex src = perfrank::direct_sum(f.source_, g.source_);
        FreeComplex tgt = perfrank::direct_sum(f.target_, g.target_);
        std::map<int, MatrixOverA> comps;
        for (const auto& [n, r] : src.ranks()) {
            (void)r;
            MatrixOverA m(src.algebra(), src.rank_at(n), tgt.rank_at(n));
            MatrixOverA mf = f.component(n), mg = g.component(n);
            for (int i = 0; i < mf.rows(); ++i)
                for (int j = 0; j < mf.cols(); ++j) m.at(i, j) = mf.at(i, j);
            for (int i = 0; i < mg.rows(); ++i)
                for (int j = 0; j < mg.cols(); ++j) m.at(mf.rows() + i, mf.cols() + j) = mg.at(i, j);
            comps.emplace(n, std::move(m));
        }
        return ChainMap(std::move(src), std::move(tgt), std::move(comps));
    }

    friend bool operator==(const ChainMap& f, const ChainMap& g) {
        if (f.source_ != g.source_ || f.target_ != g.target_) return false;
        std::set<int> degs;
        for (const auto& [n, _] : f.comps_) degs.insert(n);
        for (const auto& [n, _] : g.comps_) degs.insert(n);
        for (int n : degs)
            if (f.component(n) != g.component(n)) return false;
        return true;
    }
    friend bool operator!=(const ChainMap& f, const ChainMap& g) { return !(f == g); }

  private:
    FreeComplex source_;
    FreeComplex target_;
    std::map<int, MatrixOverA> comps_;
};

struct IdempotentObject {
    FreeComplex complex;
    ChainMap endo;

    IdempotentObject(FreeComplex x, ChainMap e) : complex(std::move(x)), endo(std::move(e)) {
        if (endo.source() != complex || endo.target() != complex)
            throw std::invalid_argument("idempotent endomorphism must act on the given complex");
        if (ChainMap::compose(endo, endo) != endo)
            throw std::invalid_argument("endomorphism is not strictly idempotent");
    }
};

struct ConeTriangle {
    FreeComplex cone;
    ChainMap include_target;     // iota : Y -> cone(f)
    ChainMap project_to_shifted; // pi : cone(f) -> Sigma X
};

inline ConeTriangle cone(const ChainMap& f) {
    if (!f.commutes_with_differentials()) throw std::invalid_argument("cone of a non-chain-map");
    const FreeComplex& x = f.source();
    const FreeComplex& y = f.target();
    const AlgebraRef& alg = f.algebra();

    std::map<int, int> ranks;
    std::set<int> degs;
    for (const auto& [n, r] : x.ranks()) { ranks[n + 1] += r; degs.insert(n + 1); }
    for (const auto& [n, r] : y.ranks()) { ranks[n] += r; degs.insert(n); }

    std::map<int, MatrixOverA> diffs;
    for (int n : degs) {
        int rows = x.rank_at(n - 1) + y.rank_at(n);
        int cols = x.rank_at(n - 2) + y.rank_at(n - 1);
        if (rows == 0 || cols == 0) continue;
        MatrixOverA d(alg, rows, cols);
        MatrixOverA dx = x.diff(n - 1).negated();
        MatrixOverA dy = y.diff(n);
        MatrixOverA fn = f.component(n - 1);
        // rows: X_{n-1} block then Y_n block; columns: X_{n-2} then Y_{n-1}
        for (int r = 0; r < dx.rows(); ++r)
            for (int c = 0; c < dx.cols(); ++c) d.at(r, c) = dx.at(r, c);
        for (int r = 0; r < fn.rows(); ++r)
            for (int c = 0; c < fn.cols(); ++c) d.at(r, x.rank_at(n - 2) + c) = fn.at(r, c);
        for (int r = 0; r < dy.rows(); ++r)
            for (int c = 0; c < dy.cols(); ++c) d.at(x.rank_at(n - 1) + r, x.rank_at(n - 2) + c) = dy.at(r, c);
        diffs.emplace(n, std::move(d));
    }
    FreeComplex cx(alg, std::move(ranks), std::move(diffs));

    std::map<int, MatrixOverA> incl;
    for (const auto& [n, r] : y.ranks()) {
        MatrixOverA m(alg, r, cx.rank_at(n));
        for (int i = 0; i < r; ++i) m.at(i, x.rank_at(n - 1) + i) = AlgElement::one(alg);
        incl.emplace(n, std::move(m));
    }
    std::map<int, MatrixOverA> proj;
    FreeComplex sx = shift(x, 1);
    for (const auto& [n, r] : cx.ranks()) {
        int xr = x.rank_at(n - 1);
        if (xr == 0) continue;
        MatrixOverA m(alg, r, xr);
        for (int i = 0; i < xr; ++i) m.at(i, i) = AlgElement::one(alg);
        proj.emplace(n, std::move(m));
    }
    return ConeTriangle{cx, ChainMap(y, cx, std::move(incl)), ChainMap(cx, std::move(sx), std::move(proj))};
}

// ---------------------------------------------------------------------------
// Base change and homology

// A bounded complex of finite-dimensional vector spaces, kept as flattened
// differential matrices D_n : K^{dim_n} -> K^{dim_{n-1}} (column convention).
struct FieldComplex {
    FieldSpec field;
    std::map<int, int> dims;
    std::map<int, ExactMatrix> diffs;

    int dim_at(int n) const {
        auto it = dims.find(n);
        return it == dims.end() ? 0 : it->second;
    }
    ExactMatrix diff(int n) const {
        auto it = diffs.find(n);
        if (it != diffs.end()) return it->second;
        return ExactMatrix(field, dim_at(n - 1), dim_at(n));
    }

    std::map<int, int> homology_dims() const {
        std::map<int, int> h;
        for (const auto& [n, dn] : dims) {
            (void)dn;
            int rk_out = rank(diff(n));
            int rk_in = rank(diff(n + 1));
            int hn = dim_at(n) - rk_out - rk_in;
            if (hn != 0) h[n] = hn;
        }
        return h;
    }
};

// Apply a matrix-ring homomorphism degreewise: A^r becomes K^{rn} and each
// differential entry a becomes the n x n block phi(a).
inline FieldComplex base_change(const MatAlgebraHom& phi, const FreeComplex& x) {
    if (phi.source != x.algebra()) throw std::invalid_argument("base change along a hom with different source");
    FieldComplex out;
    out.field = phi.target_field;
    for (const auto& [n, r] : x.ranks()) out.dims[n] = r * phi.n;
    for (const auto& [n, r] : x.ranks()) {
        (void)r;
        if (x.rank_at(n) > 0 && x.rank_at(n - 1) > 0) out.diffs.emplace(n, x.diff(n).flatten_hom(phi));
    }
    return out;
}

// View the complex over the ground field via the left regular representation
// of the algebra (each A^r has ground dimension r * dim A).
inline FieldComplex ground_field_complex(const FreeComplex& x) {
    FieldComplex out;
    out.field = x.algebra()->field;
    int m = x.algebra()->dim;
    for (const auto& [n, r] : x.ranks()) out.dims[n] = r * m;
    for (const auto& [n, r] : x.ranks()) {
        (void)r;
        if (x.rank_at(n) > 0 && x.rank_at(n - 1) > 0) out.diffs.emplace(n, x.diff(n).flatten_regular());
    }
    return out;
}

inline std::map<int, int> homology_dims(const FreeComplex& x) { return ground_field_complex(x).homology_dims(); }

} // namespace perfrank
