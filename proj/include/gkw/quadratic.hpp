#pragma once

#include "gkw/bigfloat.hpp"
#include "gkw/rational.hpp"

#include <compare>
#include <string>

namespace gkw {

// Exact element a + b*sqrt(d) of the real quadratic field Q(sqrt d), d square-free.
// Values with different d never mix; every binary operation checks the tag.
class QuadraticNumber {
public:
    explicit QuadraticNumber(long d = 5);
    QuadraticNumber(Rational a, Rational b, long d);
    static QuadraticNumber rational(Rational a, long d) { return QuadraticNumber(std::move(a), Rational(0), d); }
    // sqrt(d) itself.
    static QuadraticNumber root(long d) { return QuadraticNumber(Rational(0), Rational(1), d); }

    const Rational& a() const { return a_; }
    const Rational& b() const { return b_; }
    long d() const { return d_; }

    bool is_zero() const { return a_.is_zero() && b_.is_zero(); }
    bool is_rational() const { return b_.is_zero(); }
    // Exact sign of the real value a + b*sqrt(d).
    int sign() const;

    QuadraticNumber conjugate() const { return QuadraticNumber(a_, -b_, d_); }
    // (a + b sqrt d)(a - b sqrt d) = a^2 - d b^2
    Rational field_norm() const;
    QuadraticNumber inverse() const;
    QuadraticNumber pow(long k) const;

    QuadraticNumber operator-() const { return QuadraticNumber(-a_, -b_, d_); }
    QuadraticNumber& operator+=(const QuadraticNumber& o);
    QuadraticNumber& operator-=(const QuadraticNumber& o);
    QuadraticNumber& operator*=(const QuadraticNumber& o);
    QuadraticNumber& operator/=(const QuadraticNumber& o);
    QuadraticNumber& operator*=(const Rational& r);

    friend QuadraticNumber operator+(QuadraticNumber x, const QuadraticNumber& y) { return x += y; }
    friend QuadraticNumber operator-(QuadraticNumber x, const QuadraticNumber& y) { return x -= y; }
    friend QuadraticNumber operator*(QuadraticNumber x, const QuadraticNumber& y) { return x *= y; }
    friend QuadraticNumber operator/(QuadraticNumber x, const QuadraticNumber& y) { return x /= y; }
    friend QuadraticNumber operator*(QuadraticNumber x, const Rational& r) { return x *= r; }
    friend QuadraticNumber operator*(const Rational& r, QuadraticNumber x) { return x *= r; }

    // Componentwise equality; the representation is canonical, so this is
    // equality of real numbers. Different d compare unequal.
    friend bool operator==(const QuadraticNumber& x, const QuadraticNumber& y);

    std::string str() const;

private:
    void require_same_field(const QuadraticNumber& o) const;

    Rational a_;
    Rational b_;
    long d_;
};

// Exact total order of the real embeddings (positive square root). Throws
// DomainError when the discriminants differ.
std::strong_ordering quad_compare(const QuadraticNumber& x, const QuadraticNumber& y);

// a + b sqrt(d) rounded to precision p with error at most 1 ulp.
BigFloat quad_to_float(const QuadraticNumber& x, Precision p);

// phi^k for phi = (1 + sqrt 5)/2, exact; k may be negative.
QuadraticNumber golden_pow(long k);
QuadraticNumber golden_ratio();

// Writes n = s^2 * d with d square-free; returns {s, d}.
std::pair<long, long> split_square(long n);

}  // namespace gkw
