#include "ringkit/rational.hpp"

#include <ostream>
#include <stdexcept>

namespace ringkit {

Rational::Rational(long num, long den) : q_(num, den) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    q_.canonicalize();
}

Rational::Rational(const mpz_class& num, const mpz_class& den) : q_(num, den) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    q_.canonicalize();
}

Rational operator/(const Rational& a, const Rational& b) {
    if (b.q_ == 0) throw std::domain_error("rational division by zero");
    return Rational(mpq_class(a.q_ / b.q_));
}

Rational Rational::parse(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty rational literal");
    auto valid = [](const std::string& s) {
        if (s.empty()) return false;
        std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
        if (i == s.size()) return false;
        for (; i < s.size(); ++i)
            if (s[i] < '0' || s[i] > '9') return false;
        return true;
    };
    const auto slash = text.find('/');
    std::string num = text.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : text.substr(slash + 1);
    if (!valid(num) || !valid(den))
        throw std::invalid_argument("malformed rational literal: " + text);
    const mpz_class np(num), dp(den);
    if (dp == 0) throw std::invalid_argument("zero denominator in: " + text);
    mpq_class q(np, dp);
    q.canonicalize();
    return Rational(q);
}

std::string Rational::str() const {
    return q_.get_str();  // "p/q", or "p" when the denominator is 1
}

Rational Rational::floor() const {
    mpz_class f;
    mpz_fdiv_q(f.get_mpz_t(), q_.get_num().get_mpz_t(), q_.get_den().get_mpz_t());
    return Rational(mpq_class(f));
}

Rational Rational::frac() const { return *this - floor(); }

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

bool nadic_check(const Rational& t, long n) {
    if (n < 2) throw std::domain_error("nadic_check requires n >= 2");
    if (t < Rational(0) || t > Rational(1)) return false;
    mpz_class q = t.den();
    const mpz_class base(n);
    while (q != 1) {
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), base.get_mpz_t());
        if (g == 1) return false;
        q /= g;
    }
    return true;
}

Rational rational_pow(long n, long k) {
    mpz_class p;
    const unsigned long mag = static_cast<unsigned long>(k < 0 ? -k : k);
    mpz_ui_pow_ui(p.get_mpz_t(), static_cast<unsigned long>(n), mag);
    if (k >= 0) return Rational(p, mpz_class(1));
    return Rational(mpz_class(1), p);
}

}  // namespace ringkit
