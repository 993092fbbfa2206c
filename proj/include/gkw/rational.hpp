#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <string>

namespace gkw {

using Integer = mpz_class;

// Exact rational in lowest terms with a positive denominator.
class Rational {
public:
    Rational() = default;
    Rational(long value) : q_(value) {}  // NOLINT: implicit from integers is intended
    Rational(const Integer& value) : q_(value) {}
    Rational(const Integer& num, const Integer& den);
    Rational(long num, long den);

    static Rational from_mpq(const mpq_class& q);

    const mpq_class& get() const { return q_; }
    Integer numerator() const { return q_.get_num(); }
    Integer denominator() const { return q_.get_den(); }

    int sign() const { return sgn(q_); }
    bool is_zero() const { return sign() == 0; }
    bool is_integer() const { return q_.get_den() == 1; }

    Rational operator-() const { return from_mpq(mpq_class(-q_)); }
    Rational& operator+=(const Rational& o);
    Rational& operator-=(const Rational& o);
    Rational& operator*=(const Rational& o);
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

    Rational abs() const { return sign() < 0 ? -*this : *this; }
    Rational inverse() const;
    Rational pow(long k) const;

    std::string str() const { return q_.get_str(); }
    double to_double() const { return q_.get_d(); }

private:
    mpq_class q_;
};

Integer binomial(long n, long k);
// Generalized binomial C(n, k) for any integer n and k >= 0.
Integer binomial_signed(long n, long k);
Integer pow_int(long base, unsigned long exp);

}  // namespace gkw
