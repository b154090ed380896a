#pragma once

// Dense exact linear algebra over Q and prime fields F_p: rank, kernels,
// solving and block assembly.  Entries are stored as Rational throughout;
// for F_p they are kept as canonical residues 0..p-1 with denominator 1.

#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "rational.hpp"

namespace perfrank {

struct FieldSpec {
    // p == 0 means the rationals; otherwise the prime field F_p.
    std::uint64_t p = 0;

    static FieldSpec rationals() { return FieldSpec{0}; }
    static FieldSpec prime_field(std::uint64_t p) {
        if (p < 2) throw std::invalid_argument("prime field needs p >= 2");
        for (std::uint64_t d = 2; d * d <= p; ++d)
            if (p % d == 0) throw std::invalid_argument("prime field modulus " + std::to_string(p) + " is composite");
        return FieldSpec{p};
    }

    bool is_rationals() const { return p == 0; }
    friend bool operator==(const FieldSpec& a, const FieldSpec& b) { return a.p == b.p; }
    friend bool operator!=(const FieldSpec& a, const FieldSpec& b) { return a.p != b.p; }
    std::string str() const { return p == 0 ? "Q" : "F" + std::to_string(p); }
};

namespace fieldops {

inline std::int64_t mod_inverse(std::int64_t a, std::int64_t p) {
    std::int64_t t = 0, nt = 1, r = p, nr = ((a % p) + p) % p;
    while (nr != 0) {
        std::int64_t q = r / nr;
        std::int64_t tmp = t - q * nt; t = nt; nt = tmp;
        tmp = r - q * nr; r = nr; nr = tmp;
    }
    if (r != 1) throw std::domain_error("element not invertible mod " + std::to_string(p));
    return ((t % p) + p) % p;
}

// Map a rational into canonical form for the field.
inline Rational canon(const FieldSpec& f, const Rational& x) {
    if (f.is_rationals()) return x;
    std::int64_t p = static_cast<std::int64_t>(f.p);
    std::int64_t n = ((x.num() % p) + p) % p;
    std::int64_t d = x.den() % p;
    if (d == 0) throw std::domain_error("denominator divisible by field characteristic");
    __int128 v = static_cast<__int128>(n) * mod_inverse(d, p);
    return Rational(static_cast<std::int64_t>(v % p));
}

inline Rational add(const FieldSpec& f, const Rational& a, const Rational& b) { return canon(f, a + b); }
inline Rational sub(const FieldSpec& f, const Rational& a, const Rational& b) { return canon(f, a - b); }
inline Rational mul(const FieldSpec& f, const Rational& a, const Rational& b) { return canon(f, a * b); }
inline Rational neg(const FieldSpec& f, const Rational& a) { return canon(f, -a); }
inline Rational inv(const FieldSpec& f, const Rational& a) {
    if (a.is_zero()) throw std::domain_error("inverse of zero field element");
    if (f.is_rationals()) return a.inverse();
    return Rational(mod_inverse(a.num(), static_cast<std::int64_t>(f.p)));
}
inline Rational div(const FieldSpec& f, const Rational& a, const Rational& b) { return mul(f, a, inv(f, b)); }

} // namespace fieldops

class ExactMatrix {
  public:
    ExactMatrix() : field_(FieldSpec::rationals()), rows_(0), cols_(0) {}
    ExactMatrix(FieldSpec f, int rows, int cols)
        : field_(f), rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols, Rational(0)) {
        if (rows < 0 || cols < 0) throw std::invalid_argument("negative matrix dimension");
    }

    static ExactMatrix identity(FieldSpec f, int n) {
        ExactMatrix m(f, n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = Rational(1);
        return m;
    }

    FieldSpec field() const { return field_; }
    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Rational& at(int r, int c) { return a_[static_cast<std::size_t>(r) * cols_ + c]; }
    const Rational& at(int r, int c) const { return a_[static_cast<std::size_t>(r) * cols_ + c]; }

    void set(int r, int c, const Rational& v) { at(r, c) = fieldops::canon(field_, v); }

    bool is_zero() const {
        for (const auto& x : a_)
            if (!x.is_zero()) return false;
        return true;
    }

    ExactMatrix transpose() const {
        ExactMatrix t(field_, cols_, rows_);
        for (int r = 0; r < rows_; ++r)
            for (int c = 0; c < cols_; ++c) t.at(c, r) = at(r, c);
        return t;
    }

    friend ExactMatrix operator*(const ExactMatrix& x, const ExactMatrix& y) {
        x.require_field(y);
        if (x.cols_ != y.rows_) throw std::invalid_argument("matrix product shape mismatch");
        ExactMatrix out(x.field_, x.rows_, y.cols_);
        for (int r = 0; r < x.rows_; ++r)
            for (int k = 0; k < x.cols_; ++k) {
                if (x.at(r, k).is_zero()) continue;
                for (int c = 0; c < y.cols_; ++c)
                    out.at(r, c) = fieldops::add(x.field_, out.at(r, c), fieldops::mul(x.field_, x.at(r, k), y.at(k, c)));
            }
        return out;
    }
    friend ExactMatrix operator+(const ExactMatrix& x, const ExactMatrix& y) {
        x.require_field(y);
        if (x.rows_ != y.rows_ || x.cols_ != y.cols_) throw std::invalid_argument("matrix sum shape mismatch");
        ExactMatrix out(x.field_, x.rows_, x.cols_);
        for (std::size_t i = 0; i < x.a_.size(); ++i) out.a_[i] = fieldops::add(x.field_, x.a_[i], y.a_[i]);
        return out;
    }
    friend ExactMatrix operator-(const ExactMatrix& x, const ExactMatrix& y) {
        x.require_field(y);
        if (x.rows_ != y.rows_ || x.cols_ != y.cols_) throw std::invalid_argument("matrix diff shape mismatch");
        ExactMatrix out(x.field_, x.rows_, x.cols_);
        for (std::size_t i = 0; i < x.a_.size(); ++i) out.a_[i] = fieldops::sub(x.field_, x.a_[i], y.a_[i]);
        return out;
    }
    ExactMatrix scaled(const Rational& s) const {
        ExactMatrix out(field_, rows_, cols_);
        for (std::size_t i = 0; i < a_.size(); ++i) out.a_[i] = fieldops::mul(field_, a_[i], s);
        return out;
    }
    friend bool operator==(const ExactMatrix& x, const ExactMatrix& y) {
        return x.field_ == y.field_ && x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.a_ == y.a_;
    }
    friend bool operator!=(const ExactMatrix& x, const ExactMatrix& y) { return !(x == y); }

    static ExactMatrix block_diag(const ExactMatrix& x, const ExactMatrix& y) {
        x.require_field(y);
        ExactMatrix out(x.field_, x.rows_ + y.rows_, x.cols_ + y.cols_);
        for (int r = 0; r < x.rows_; ++r)
            for (int c = 0; c < x.cols_; ++c) out.at(r, c) = x.at(r, c);
        for (int r = 0; r < y.rows_; ++r)
            for (int c = 0; c < y.cols_; ++c) out.at(x.rows_ + r, x.cols_ + c) = y.at(r, c);
        return out;
    }

    ExactMatrix submatrix(const std::vector<int>& rs, const std::vector<int>& cs) const {
        ExactMatrix out(field_, static_cast<int>(rs.size()), static_cast<int>(cs.size()));
        for (std::size_t i = 0; i < rs.size(); ++i)
            for (std::size_t j = 0; j < cs.size(); ++j) out.at(static_cast<int>(i), static_cast<int>(j)) = at(rs[i], cs[j]);
        return out;
    }

    friend std::ostream& operator<<(std::ostream& os, const ExactMatrix& m) {
        os << "[";
        for (int r = 0; r < m.rows_; ++r) {
            os << (r ? "; " : "");
            for (int c = 0; c < m.cols_; ++c) os << (c ? " " : "") << m.at(r, c);
        }
        return os << "]";
    }

  private:
    void require_field(const ExactMatrix& o) const {
        if (field_ != o.field_) throw std::invalid_argument("matrix field mismatch");
    }

    FieldSpec field_;
    int rows_, cols_;
    std::vector<Rational> a_;
};

struct RowEchelon {
    ExactMatrix rref;
    std::vector<int> pivot_cols;
    int rank = 0;
};

inline RowEchelon row_echelon(const ExactMatrix& m) {
    RowEchelon out{m, {}, 0};
    ExactMatrix& a = out.rref;
    const FieldSpec f = m.field();
    int lead = 0;
    for (int c = 0; c < a.cols() && lead < a.rows(); ++c) {
        int piv = -1;
        for (int r = lead; r < a.rows(); ++r)
            if (!a.at(r, c).is_zero()) { piv = r; break; }
        if (piv < 0) continue;
        if (piv != lead)
            for (int k = 0; k < a.cols(); ++k) std::swap(a.at(piv, k), a.at(lead, k));
        Rational inv = fieldops::inv(f, a.at(lead, c));
        for (int k = 0; k < a.cols(); ++k) a.at(lead, k) = fieldops::mul(f, a.at(lead, k), inv);
        for (int r = 0; r < a.rows(); ++r) {
            if (r == lead || a.at(r, c).is_zero()) continue;
            Rational factor = a.at(r, c);
            for (int k = 0; k < a.cols(); ++k)
                a.at(r, k) = fieldops::sub(f, a.at(r, k), fieldops::mul(f, factor, a.at(lead, k)));
        }
        out.pivot_cols.push_back(c);
        ++lead;
    }
    out.rank = static_cast<int>(out.pivot_cols.size());
    return out;
}

inline int rank(const ExactMatrix& m) { return row_echelon(m).rank; }

// Basis of the right null space { x : M x = 0 }, one vector per free column.
inline std::vector<std::vector<Rational>> kernel_basis(const ExactMatrix& m) {
    RowEchelon re = row_echelon(m);
    std::vector<bool> is_pivot(static_cast<std::size_t>(m.cols()), false);
    for (int c : re.pivot_cols) is_pivot[static_cast<std::size_t>(c)] = true;
    std::vector<std::vector<Rational>> basis;
    for (int fc = 0; fc < m.cols(); ++fc) {
        if (is_pivot[static_cast<std::size_t>(fc)]) continue;
        std::vector<Rational> v(static_cast<std::size_t>(m.cols()), Rational(0));
        v[static_cast<std::size_t>(fc)] = Rational(1);
        for (std::size_t pr = 0; pr < re.pivot_cols.size(); ++pr)
            v[static_cast<std::size_t>(re.pivot_cols[pr])] =
                fieldops::neg(m.field(), re.rref.at(static_cast<int>(pr), fc));
        basis.push_back(std::move(v));
    }
    return basis;
}

// Coefficients expressing v in the column span of M, if any.
inline std::optional<std::vector<Rational>> solve_in_span(const ExactMatrix& m, const std::vector<Rational>& v) {
    if (static_cast<int>(v.size()) != m.rows()) throw std::invalid_argument("solve_in_span: length mismatch");
    ExactMatrix aug(m.field(), m.rows(), m.cols() + 1);
    for (int r = 0; r < m.rows(); ++r) {
        for (int c = 0; c < m.cols(); ++c) aug.at(r, c) = m.at(r, c);
        aug.at(r, m.cols()) = fieldops::canon(m.field(), v[static_cast<std::size_t>(r)]);
    }
    RowEchelon re = row_echelon(aug);
    std::vector<Rational> x(static_cast<std::size_t>(m.cols()), Rational(0));
    for (std::size_t pr = 0; pr < re.pivot_cols.size(); ++pr) {
        int pc = re.pivot_cols[pr];
        if (pc == m.cols()) return std::nullopt; // pivot in the augmented column
        x[static_cast<std::size_t>(pc)] = re.rref.at(static_cast<int>(pr), m.cols());
    }
    return x;
}

// Matrix whose columns are the given vectors.
inline ExactMatrix columns(FieldSpec f, int height, const std::vector<std::vector<Rational>>& vs) {
    ExactMatrix out(f, height, static_cast<int>(vs.size()));
    for (std::size_t j = 0; j < vs.size(); ++j) {
        if (static_cast<int>(vs[j].size()) != height) throw std::invalid_argument("columns: height mismatch");
        for (int i = 0; i < height; ++i) out.set(i, static_cast<int>(j), vs[j][static_cast<std::size_t>(i)]);
    }
    return out;
}

} // namespace perfrank
