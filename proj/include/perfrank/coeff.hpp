#pragma once

// Arithmetic in the periodic coefficient rings R(d) = Q[q]/(q^d - 1) for
// finite d and Q[q, q^-1] for d = infinity, together with the nonnegativity
// cone, period reduction maps, and division by (1 + q).
//
// Canonical form: for finite d every stored exponent lies in {0, ..., d-1};
// zero coefficients are never stored.  Cone membership is then simply
// "every stored coefficient is >= 0".

#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <utility>
#include <vector>

#include "rational.hpp"

namespace perfrank {

class Period {
  public:
    static Period infinite() { return Period(0); }
    static Period finite(std::int64_t d) {
        if (d < 1) throw std::invalid_argument("finite period must be >= 1");
        return Period(d);
    }

    bool is_infinite() const { return d_ == 0; }
    bool is_finite() const { return d_ != 0; }
    std::int64_t value() const {
        if (is_infinite()) throw std::logic_error("infinite period has no finite value");
        return d_;
    }
    bool is_odd() const { return is_finite() && d_ % 2 == 1; }

    friend bool operator==(const Period& a, const Period& b) { return a.d_ == b.d_; }
    friend bool operator!=(const Period& a, const Period& b) { return a.d_ != b.d_; }

    std::string str() const { return is_infinite() ? "inf" : std::to_string(d_); }

  private:
    explicit Period(std::int64_t d) : d_(d) {}
    std::int64_t d_; // 0 encodes infinity
};

class CoeffPoly {
  public:
    explicit CoeffPoly(Period p = Period::infinite()) : period_(p) {}

    static CoeffPoly zero(Period p) { return CoeffPoly(p); }
    static CoeffPoly constant(const Rational& c, Period p) {
        return normalize({{0, c}}, p);
    }
    static CoeffPoly monomial(std::int64_t exp, const Rational& c, Period p) {
        return normalize({{exp, c}}, p);
    }
    // 1 + q at the given period
    static CoeffPoly one_plus_q(Period p) {
        return normalize({{0, Rational(1)}, {1, Rational(1)}}, p);
    }

    static CoeffPoly normalize(const std::vector<std::pair<std::int64_t, Rational>>& raw, Period p) {
        CoeffPoly out(p);
        for (const auto& [e, c] : raw) out.add_term(e, c);
        return out;
    }

    Period period() const { return period_; }
    const std::map<std::int64_t, Rational>& coeffs() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }

    Rational coeff(std::int64_t exp) const {
        std::int64_t e = reduce_exp(exp);
        auto it = coeffs_.find(e);
        return it == coeffs_.end() ? Rational(0) : it->second;
    }

    bool is_nonneg() const {
        for (const auto& [e, c] : coeffs_)
            if (c.is_negative()) return false;
        return true;
    }

    friend CoeffPoly operator+(const CoeffPoly& a, const CoeffPoly& b) {
        a.require_same_period(b);
        CoeffPoly out = a;
        for (const auto& [e, c] : b.coeffs_) out.add_term(e, c);
        return out;
    }
    friend CoeffPoly operator-(const CoeffPoly& a, const CoeffPoly& b) {
        a.require_same_period(b);
        CoeffPoly out = a;
        for (const auto& [e, c] : b.coeffs_) out.add_term(e, -c);
        return out;
    }
    friend CoeffPoly operator*(const CoeffPoly& a, const CoeffPoly& b) {
        a.require_same_period(b);
        CoeffPoly out(a.period_);
        for (const auto& [ea, ca] : a.coeffs_)
            for (const auto& [eb, cb] : b.coeffs_)
                out.add_term(detail::checked(static_cast<__int128>(ea) + eb, "exponent add"), ca * cb);
        return out;
    }
    friend bool operator==(const CoeffPoly& a, const CoeffPoly& b) {
        return a.period_ == b.period_ && a.coeffs_ == b.coeffs_;
    }
    friend bool operator!=(const CoeffPoly& a, const CoeffPoly& b) { return !(a == b); }

    CoeffPoly shifted(std::int64_t k) const {
        CoeffPoly out(period_);
        for (const auto& [e, c] : coeffs_)
            out.add_term(detail::checked(static_cast<__int128>(e) + k, "exponent shift"), c);
        return out;
    }
    CoeffPoly scaled(const Rational& s) const {
        CoeffPoly out(period_);
        for (const auto& [e, c] : coeffs_) out.add_term(e, c * s);
        return out;
    }

    // Ring map R(d) -> R(d') for d' | d, or from d = infinity to anything.
    CoeffPoly reduced_to(Period target) const {
        if (period_ == target) return *this;
        if (period_.is_finite()) {
            if (target.is_infinite() || period_.value() % target.value() != 0)
                throw std::invalid_argument("period reduction requires target dividing source");
        }
        CoeffPoly out(target);
        for (const auto& [e, c] : coeffs_) out.add_term(e, c);
        return out;
    }

    std::string str() const {
        if (coeffs_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [e, c] : coeffs_) {
            if (!first) os << (c.is_negative() ? " - " : " + ");
            else if (c.is_negative()) os << "-";
            Rational a = c.is_negative() ? -c : c;
            if (e == 0) {
                os << a.str();
            } else {
                if (a != Rational(1)) os << a.str() << "*";
                os << "q";
                if (e != 1) os << "^" << e;
            }
            first = false;
        }
        return os.str();
    }
    friend std::ostream& operator<<(std::ostream& os, const CoeffPoly& p) { return os << p.str(); }

  private:
    void require_same_period(const CoeffPoly& o) const {
        if (period_ != o.period_)
            throw std::invalid_argument("period mismatch: " + period_.str() + " vs " + o.period_.str());
    }

    std::int64_t reduce_exp(std::int64_t e) const {
        if (period_.is_infinite()) return e;
        std::int64_t d = period_.value();
        std::int64_t r = e % d;
        return r < 0 ? r + d : r;
    }

    void add_term(std::int64_t exp, const Rational& c) {
        if (c.is_zero()) return;
        std::int64_t e = reduce_exp(exp);
        auto it = coeffs_.find(e);
        if (it == coeffs_.end()) {
            coeffs_.emplace(e, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) coeffs_.erase(it);
        }
    }

    Period period_;
    std::map<std::int64_t, Rational> coeffs_;
};

struct QPlusOneDivision {
    std::optional<CoeffPoly> quotient; // phi with (1+q)*phi == input, when it exists
    bool nonneg_witness = false;       // some phi >= 0 exists (equivalently: the quotient exists and is >= 0)
};

// Division by (1 + q).  Defined for infinite or odd finite period only:
// at odd d the element 1+q is a unit with inverse (sum_{i<d} (-q)^i)/2,
// so the quotient always exists; at d = infinity the division is exact
// polynomial division and may fail.  The witness reports whether the
// alternating tail sums  sum_{i>=0} (-1)^i a_{n+i}  are all nonnegative
// over every integer n, which holds exactly when a nonnegative quotient
// exists.
inline QPlusOneDivision divide_q_plus_1(const CoeffPoly& a) {
    QPlusOneDivision out;
    Period p = a.period();
    if (p.is_finite()) {
        if (!p.is_odd()) throw std::invalid_argument("divide_q_plus_1: even finite period unsupported");
        CoeffPoly inv(p);
        {
            std::vector<std::pair<std::int64_t, Rational>> terms;
            for (std::int64_t i = 0; i < p.value(); ++i)
                terms.emplace_back(i, Rational(i % 2 == 0 ? 1 : -1, 2));
            inv = CoeffPoly::normalize(terms, p);
        }
        CoeffPoly q = a * inv;
        out.quotient = q;
        out.nonneg_witness = q.is_nonneg();
        return out;
    }

    if (a.is_zero()) {
        out.quotient = CoeffPoly::zero(p);
        out.nonneg_witness = true;
        return out;
    }

    std::int64_t lo = a.coeffs().begin()->first;
    std::int64_t hi = a.coeffs().rbegin()->first;

    // Ascending exact division: phi_i = a_i - phi_{i-1}; succeeds when the
    // would-be top coefficient vanishes.
    std::vector<Rational> phi(static_cast<std::size_t>(hi - lo) + 1, Rational(0));
    Rational prev(0);
    for (std::int64_t i = lo; i <= hi; ++i) {
        Rational cur = a.coeff(i) - prev;
        phi[static_cast<std::size_t>(i - lo)] = cur;
        prev = cur;
    }
    bool divisible = phi[static_cast<std::size_t>(hi - lo)].is_zero();
    if (divisible) {
        std::vector<std::pair<std::int64_t, Rational>> terms;
        for (std::int64_t i = lo; i < hi; ++i)
            terms.emplace_back(i, phi[static_cast<std::size_t>(i - lo)]);
        out.quotient = CoeffPoly::normalize(terms, p);
    }

    // Alternating tails t_n = sum_{i>=0} (-1)^i a_{n+i}, descending from the
    // top of the support.  Below the support the tails alternate +-t_lo, so
    // nonnegativity over all of Z additionally forces t_lo = 0.
    bool tails_ok = true;
    Rational tail(0);
    Rational t_lo(0);
    for (std::int64_t n = hi; n >= lo; --n) {
        tail = a.coeff(n) - tail;
        if (tail.is_negative()) tails_ok = false;
        if (n == lo) t_lo = tail;
    }
    out.nonneg_witness = tails_ok && t_lo.is_zero();
    return out;
}

} // namespace perfrank
