#pragma once

#include <compare>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace hyperchaos {

/// Exact rational number in canonical form (gcd(num, den) = 1, den > 0).
/// Arithmetic never rounds; equality is mathematical equality.
class Rational {
public:
    Rational() : v_(0) {}
    Rational(long n) : v_(n) {}  // NOLINT: implicit on purpose, mirrors integer literals
    Rational(long num, long den) : v_(num, den) {
        if (den == 0) throw std::domain_error("Rational: zero denominator");
        v_.canonicalize();
    }
    explicit Rational(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }

    /// Parses "p/q" or "p" (optional leading '-').
    static Rational parse(std::string_view text) {
        const std::string s(text);
        if (s.empty()) throw std::invalid_argument("Rational: empty string");
        mpq_class v;
        if (v.set_str(s, 10) != 0)
            throw std::invalid_argument("Rational: cannot parse '" + s + "'");
        if (v.get_den() == 0) throw std::domain_error("Rational: zero denominator in '" + s + "'");
        v.canonicalize();
        return Rational(std::move(v));
    }

    /// Canonical "p/q" form (always with explicit denominator).
    std::string str() const {
        return v_.get_num().get_str() + "/" + v_.get_den().get_str();
    }

    double approx() const { return v_.get_d(); }

    bool is_zero() const { return sgn(v_) == 0; }
    int sign() const { return sgn(v_); }

    const mpz_class& num() const { return v_.get_num(); }
    const mpz_class& den() const { return v_.get_den(); }

    Rational operator-() const { return Rational(mpq_class(-v_)); }
    friend Rational operator+(const Rational& a, const Rational& b) { return Rational(mpq_class(a.v_ + b.v_)); }
    friend Rational operator-(const Rational& a, const Rational& b) { return Rational(mpq_class(a.v_ - b.v_)); }
    friend Rational operator*(const Rational& a, const Rational& b) { return Rational(mpq_class(a.v_ * b.v_)); }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (sgn(b.v_) == 0) throw std::domain_error("Rational: division by zero");
        return Rational(mpq_class(a.v_ / b.v_));
    }
    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o) { *this = *this / o; return *this; }

    friend bool operator==(const Rational& a, const Rational& b) { return mpq_cmp(a.v_.get_mpq_t(), b.v_.get_mpq_t()) == 0; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        const int c = mpq_cmp(a.v_.get_mpq_t(), b.v_.get_mpq_t());
        return c <=> 0;
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

private:
    mpq_class v_;
};

inline Rational abs(const Rational& a) { return a.sign() < 0 ? -a : a; }
inline const Rational& min(const Rational& a, const Rational& b) { return b < a ? b : a; }
inline const Rational& max(const Rational& a, const Rational& b) { return a < b ? b : a; }

/// 2^-k as an exact rational.
inline Rational dyadic(unsigned k) {
    mpq_class v(1);
    mpq_div_2exp(v.get_mpq_t(), v.get_mpq_t(), k);
    return Rational(std::move(v));
}

}  // namespace hyperchaos
