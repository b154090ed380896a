#pragma once

// Exact rational numbers on top of checked 64-bit integers.  Every operation
// reduces by gcd immediately; anything that would leave the 64-bit range
// throws std::overflow_error instead of silently wrapping.

#include <cstdint>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

namespace perfrank {

namespace detail {

inline std::int64_t checked(__int128 v, const char* what) {
    if (v > static_cast<__int128>(INT64_MAX) || v < static_cast<__int128>(INT64_MIN))
        throw std::overflow_error(std::string("integer overflow in ") + what);
    return static_cast<std::int64_t>(v);
}

} // namespace detail

class Rational {
  public:
    Rational() : num_(0), den_(1) {}
    Rational(std::int64_t n) : num_(n), den_(1) {}
    Rational(std::int64_t n, std::int64_t d) : num_(n), den_(d) { normalize(); }

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_integer() const { return den_ == 1; }
    bool is_negative() const { return num_ < 0; }

    friend Rational operator+(const Rational& a, const Rational& b) {
        __int128 n = static_cast<__int128>(a.num_) * b.den_ + static_cast<__int128>(b.num_) * a.den_;
        __int128 d = static_cast<__int128>(a.den_) * b.den_;
        return from_wide(n, d, "rational add");
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        __int128 n = static_cast<__int128>(a.num_) * b.den_ - static_cast<__int128>(b.num_) * a.den_;
        __int128 d = static_cast<__int128>(a.den_) * b.den_;
        return from_wide(n, d, "rational sub");
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        __int128 n = static_cast<__int128>(a.num_) * b.num_;
        __int128 d = static_cast<__int128>(a.den_) * b.den_;
        return from_wide(n, d, "rational mul");
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) throw std::domain_error("rational division by zero");
        __int128 n = static_cast<__int128>(a.num_) * b.den_;
        __int128 d = static_cast<__int128>(a.den_) * b.num_;
        return from_wide(n, d, "rational div");
    }
    Rational operator-() const {
        Rational r;
        r.num_ = detail::checked(-static_cast<__int128>(num_), "rational negate");
        r.den_ = den_;
        return r;
    }
    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return static_cast<__int128>(a.num_) * b.den_ < static_cast<__int128>(b.num_) * a.den_;
    }
    friend bool operator<=(const Rational& a, const Rational& b) { return a < b || a == b; }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator>=(const Rational& a, const Rational& b) { return b <= a; }

    Rational inverse() const {
        if (num_ == 0) throw std::domain_error("inverse of zero");
        return Rational(den_, num_);
    }

    // Canonical text form: "3", "-1/2".  parse() accepts the same shapes.
    std::string str() const {
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

    static Rational parse(const std::string& s) {
        auto slash = s.find('/');
        try {
            if (slash == std::string::npos) return Rational(std::stoll(s));
            std::int64_t n = std::stoll(s.substr(0, slash));
            std::int64_t d = std::stoll(s.substr(slash + 1));
            return Rational(n, d);
        } catch (const std::overflow_error&) {
            throw;
        } catch (const std::exception&) {
            throw std::invalid_argument("malformed rational '" + s + "'");
        }
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

  private:
    static Rational from_wide(__int128 n, __int128 d, const char* what) {
        if (d == 0) throw std::domain_error("rational with zero denominator");
        if (d < 0) { n = -n; d = -d; }
        __int128 g = gcd_wide(n < 0 ? -n : n, d);
        if (g > 1) { n /= g; d /= g; }
        Rational r;
        r.num_ = detail::checked(n, what);
        r.den_ = detail::checked(d, what);
        return r;
    }

    static __int128 gcd_wide(__int128 a, __int128 b) {
        while (b != 0) {
            __int128 t = a % b;
            a = b;
            b = t;
        }
        return a == 0 ? 1 : a;
    }

    void normalize() {
        if (den_ == 0) throw std::domain_error("rational with zero denominator");
        if (den_ < 0) {
            num_ = detail::checked(-static_cast<__int128>(num_), "rational normalize");
            den_ = detail::checked(-static_cast<__int128>(den_), "rational normalize");
        }
        std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
        if (g > 1) { num_ /= g; den_ /= g; }
        if (num_ == 0) den_ = 1;
    }

    std::int64_t num_;
    std::int64_t den_;
};

} // namespace perfrank
