#pragma once

#include <gmpxx.h>

#include <iosfwd>
#include <string>

namespace ringkit {

/// Exact arbitrary-precision rational. Always canonical: gcd(|num|, den) = 1
/// and den >= 1. This is the only number type in the library; there is no
/// floating point anywhere.
class Rational {
public:
    Rational() : q_(0) {}
    Rational(long n) : q_(n) {}  // NOLINT: implicit by design, mirrors integer literals
    Rational(long num, long den);
    Rational(const mpz_class& num, const mpz_class& den);
    explicit Rational(const mpq_class& q) : q_(q) { q_.canonicalize(); }

    /// Parses "p/q" or "p". Denominator must be positive after sign
    /// normalization; the result is canonicalized.
    static Rational parse(const std::string& text);

    std::string str() const;

    const mpz_class& num() const { return q_.get_num(); }
    const mpz_class& den() const { return q_.get_den(); }
    bool is_integer() const { return q_.get_den() == 1; }

    /// Largest integer <= *this, as a Rational.
    Rational floor() const;
    /// *this - floor(*this), in [0, 1).
    Rational frac() const;

    friend Rational operator+(const Rational& a, const Rational& b) { return Rational(mpq_class(a.q_ + b.q_)); }
    friend Rational operator-(const Rational& a, const Rational& b) { return Rational(mpq_class(a.q_ - b.q_)); }
    friend Rational operator*(const Rational& a, const Rational& b) { return Rational(mpq_class(a.q_ * b.q_)); }
    friend Rational operator/(const Rational& a, const Rational& b);
    Rational operator-() const { return Rational(mpq_class(-q_)); }

    Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
    Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
    Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.q_ != b.q_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.q_ < b.q_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.q_ > b.q_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.q_ <= b.q_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.q_ >= b.q_; }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r);

private:
    mpq_class q_;
};

/// True iff t = a/n^b for integers a, b >= 0 and 0 <= t <= 1.
bool nadic_check(const Rational& t, long n);

/// n^k for k of either sign, as an exact rational.
Rational rational_pow(long n, long k);

}  // namespace ringkit
