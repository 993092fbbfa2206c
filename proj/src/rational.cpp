#include "gkw/rational.hpp"
#include "gkw/errors.hpp"

namespace gkw {

Rational::Rational(const Integer& num, const Integer& den) : q_(num, den) {
    if (den == 0) throw DomainError("Rational: zero denominator");
    q_.canonicalize();
}

Rational::Rational(long num, long den) : Rational(Integer(num), Integer(den)) {}

Rational Rational::from_mpq(const mpq_class& q) {
    Rational r;
    r.q_ = q;
    return r;
}

Rational& Rational::operator+=(const Rational& o) {
    q_ += o.q_;
    return *this;
}

Rational& Rational::operator-=(const Rational& o) {
    q_ -= o.q_;
    return *this;
}

Rational& Rational::operator*=(const Rational& o) {
    q_ *= o.q_;
    return *this;
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw DomainError("Rational: division by zero");
    q_ /= o.q_;
    return *this;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.q_, b.q_);
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

Rational Rational::inverse() const {
    if (is_zero()) throw DomainError("Rational: inverse of zero");
    return from_mpq(mpq_class(1) / q_);
}

Rational Rational::pow(long k) const {
    if (k < 0) return inverse().pow(-k);
    Integer num, den;
    mpz_pow_ui(num.get_mpz_t(), q_.get_num_mpz_t(), static_cast<unsigned long>(k));
    mpz_pow_ui(den.get_mpz_t(), q_.get_den_mpz_t(), static_cast<unsigned long>(k));
    return Rational(num, den);
}

Integer binomial(long n, long k) {
    if (k < 0 || n < 0 || k > n) return 0;
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

Integer binomial_signed(long n, long k) {
    if (k < 0) return 0;
    Integer r;
    mpz_bin_ui(r.get_mpz_t(), Integer(n).get_mpz_t(), static_cast<unsigned long>(k));
    return r;
}

Integer pow_int(long base, unsigned long exp) {
    Integer r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(base < 0 ? -base : base), exp);
    if (base < 0 && (exp & 1)) r = -r;
    return r;
}

}  // namespace gkw
