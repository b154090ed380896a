#pragma once

// Rectangular matrices with entries in a finite-dimensional algebra.  A map
// of right modules A^a -> A^b is an a x b matrix F whose entries multiply
// the coordinates of the argument on the left:  f(x)_j = sum_i F[i][j] x_i.
// Composition therefore collects the later map's entries on the left, see
// compose().

#include <vector>

#include "fdalg.hpp"

namespace perfrank {

class MatrixOverA {
  public:
    MatrixOverA() : rows_(0), cols_(0) {}
    MatrixOverA(AlgebraRef alg, int rows, int cols)
        : alg_(std::move(alg)), rows_(rows), cols_(cols),
          entries_(static_cast<std::size_t>(rows) * cols, AlgElement::zero(alg_)) {
        if (rows < 0 || cols < 0) throw std::invalid_argument("negative matrix dimension");
    }

    static MatrixOverA identity(const AlgebraRef& alg, int n) {
        MatrixOverA m(alg, n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = AlgElement::one(alg);
        return m;
    }

    const AlgebraRef& algebra() const { return alg_; }
    int rows() const { return rows_; }
    int cols() const { return cols_; }

    AlgElement& at(int r, int c) { return entries_[static_cast<std::size_t>(r) * cols_ + c]; }
    const AlgElement& at(int r, int c) const { return entries_[static_cast<std::size_t>(r) * cols_ + c]; }

    bool is_zero() const {
        for (const auto& e : entries_)
            if (!e.is_zero()) return false;
        return true;
    }

    friend bool operator==(const MatrixOverA& x, const MatrixOverA& y) {
        return x.alg_ == y.alg_ && x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.entries_ == y.entries_;
    }
    friend bool operator!=(const MatrixOverA& x, const MatrixOverA& y) { return !(x == y); }

    friend MatrixOverA operator+(const MatrixOverA& x, const MatrixOverA& y) {
        x.require_like(y);
        MatrixOverA out = x;
        for (std::size_t i = 0; i < out.entries_.size(); ++i) out.entries_[i] = out.entries_[i] + y.entries_[i];
        return out;
    }
    friend MatrixOverA operator-(const MatrixOverA& x, const MatrixOverA& y) {
        x.require_like(y);
        MatrixOverA out = x;
        for (std::size_t i = 0; i < out.entries_.size(); ++i) out.entries_[i] = out.entries_[i] - y.entries_[i];
        return out;
    }
    MatrixOverA scaled(const Rational& s) const {
        MatrixOverA out = *this;
        for (auto& e : out.entries_) e = e.scaled(s);
        return out;
    }
    MatrixOverA negated() const { return scaled(Rational(-1)); }

    // Composite of `first : A^a -> A^b` followed by `then : A^b -> A^c`.
    // Entry (i,k) of the result is sum_j then[j][k] * first[i][j]; the later
    // map's entries act on the left of the earlier map's.
    static MatrixOverA compose(const MatrixOverA& first, const MatrixOverA& then) {
        if (first.alg_ != then.alg_) throw std::invalid_argument("composition across different algebras");
        if (first.cols_ != then.rows_) throw std::invalid_argument("composition shape mismatch");
        MatrixOverA out(first.alg_, first.rows_, then.cols_);
        for (int i = 0; i < first.rows_; ++i)
            for (int k = 0; k < then.cols_; ++k) {
                AlgElement acc = AlgElement::zero(first.alg_);
                for (int j = 0; j < first.cols_; ++j)
                    acc = acc + then.at(j, k) * first.at(i, j);
                out.at(i, k) = acc;
            }
        return out;
    }

    static MatrixOverA block_diag(const MatrixOverA& x, const MatrixOverA& y) {
        if (x.alg_ != y.alg_) throw std::invalid_argument("block_diag across different algebras");
        MatrixOverA out(x.alg_, x.rows_ + y.rows_, x.cols_ + y.cols_);
        for (int r = 0; r < x.rows_; ++r)
            for (int c = 0; c < x.cols_; ++c) out.at(r, c) = x.at(r, c);
        for (int r = 0; r < y.rows_; ++r)
            for (int c = 0; c < y.cols_; ++c) out.at(x.rows_ + r, x.cols_ + c) = y.at(r, c);
        return out;
    }

    MatrixOverA submatrix(const std::vector<int>& rs, const std::vector<int>& cs) const {
        MatrixOverA out(alg_, static_cast<int>(rs.size()), static_cast<int>(cs.size()));
        for (std::size_t i = 0; i < rs.size(); ++i)
            for (std::size_t j = 0; j < cs.size(); ++j)
                out.at(static_cast<int>(i), static_cast<int>(j)) = at(rs[i], cs[j]);
        return out;
    }

    // The matrix as a linear map on flattened coordinate columns: block (j,i)
    // of the result is rep(entry(i,j)), where rep sends a to the matrix of
    // left multiplication by a in the chosen representation.  With this
    // layout flattening turns compose() into the ordinary matrix product.
    template <typename Rep>
    ExactMatrix flatten(int block, FieldSpec target, Rep&& rep) const {
        ExactMatrix out(target, cols_ * block, rows_ * block);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) {
                ExactMatrix blk = rep(at(i, j));
                for (int r = 0; r < block; ++r)
                    for (int c = 0; c < block; ++c) out.at(j * block + r, i * block + c) = blk.at(r, c);
            }
        return out;
    }

    // Flatten through the left regular representation of A, viewing the map
    // A^rows -> A^cols as a linear map of ground-field coordinate columns.
    ExactMatrix flatten_regular() const {
        return flatten(alg_->dim, alg_->field,
                       [this](const AlgElement& e) { return alg_->left_mult_matrix(e.coords); });
    }

    // Flatten through a matrix-ring homomorphism.
    ExactMatrix flatten_hom(const MatAlgebraHom& phi) const {
        if (phi.source != alg_) throw std::invalid_argument("hom source differs from matrix algebra");
        return flatten(phi.n, phi.target_field, [&phi](const AlgElement& e) { return phi.apply(e.coords); });
    }

  private:
    void require_like(const MatrixOverA& o) const {
        if (alg_ != o.alg_) throw std::invalid_argument("matrices over different algebras");
        if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix shape mismatch");
    }

    AlgebraRef alg_;
    int rows_, cols_;
    std::vector<AlgElement> entries_;
};

// Rank of a matrix over a local algebra: reduce every entry modulo the
// radical to the (ground-field) residue and take the ordinary rank there.
inline Rational local_matrix_rank(const RadicalInfo& rad, const MatrixOverA& m) {
    if (!rad.is_local) throw std::invalid_argument("local_matrix_rank requires a local algebra");
    const AlgebraRef& alg = m.algebra();
    ExactMatrix reduced(alg->field, m.rows(), m.cols());
    for (int r = 0; r < m.rows(); ++r)
        for (int c = 0; c < m.cols(); ++c) {
            Rational acc(0);
            for (int j = 0; j < alg->dim; ++j)
                acc = fieldops::add(alg->field, acc,
                                    fieldops::mul(alg->field, rad.projection.at(0, j),
                                                  m.at(r, c).coords[static_cast<std::size_t>(j)]));
            reduced.at(r, c) = acc;
        }
    return Rational(rank(reduced));
}

inline Rational local_matrix_rank(const AlgebraRef& alg, const MatrixOverA& m) {
    if (m.algebra() != alg) throw std::invalid_argument("matrix is not over the given algebra");
    return local_matrix_rank(radical_and_residue(alg), m);
}

} // namespace perfrank
