#pragma once

#include "gkw/rational.hpp"

#include <mpfr.h>

#include <compare>
#include <string>
#include <utility>

namespace gkw {

// Mantissa width in bits. Every value carries its own precision; there is no
// process-wide default.
struct Precision {
    long bits;
    constexpr explicit Precision(long b) : bits(b) {}
    constexpr Precision plus(long guard) const { return Precision(bits + guard); }
    friend constexpr bool operator==(Precision, Precision) = default;
};

// Binary floating point backed by MPFR. Basic arithmetic is correctly rounded
// (round-to-nearest) at max(precision of operands); transcendental helpers are
// correctly rounded as well, so every single operation is within 1/2 ulp.
class BigFloat {
public:
    explicit BigFloat(Precision p);
    BigFloat(long value, Precision p);
    BigFloat(double value, Precision p);
    BigFloat(const Integer& value, Precision p);
    BigFloat(const Rational& value, Precision p);
    static BigFloat parse(const std::string& text, Precision p);

    BigFloat(const BigFloat& other);
    BigFloat(BigFloat&& other) noexcept;
    BigFloat& operator=(const BigFloat& other);
    BigFloat& operator=(BigFloat&& other) noexcept;
    ~BigFloat();

    Precision precision() const { return Precision(mpfr_get_prec(v_)); }
    // Same value rounded to precision p.
    BigFloat rounded(Precision p) const;

    mpfr_srcptr raw() const { return v_; }
    mpfr_ptr raw() { return v_; }

    int sign() const { return mpfr_sgn(v_); }
    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    bool is_finite() const { return mpfr_number_p(v_) != 0; }
    long exponent() const;  // x = m * 2^exponent with 1/2 <= |m| < 1
    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    // Scientific notation with `digits` significant digits; locale independent.
    std::string to_string(int digits) const;
    // Enough digits to round-trip at this precision.
    std::string to_string() const;

    BigFloat operator-() const;
    BigFloat& operator+=(const BigFloat& o);
    BigFloat& operator-=(const BigFloat& o);
    BigFloat& operator*=(const BigFloat& o);
    BigFloat& operator/=(const BigFloat& o);
    BigFloat& operator*=(long k);
    BigFloat& operator/=(long k);

    // this += a * b with a single rounding.
    void fma_accumulate(const BigFloat& a, const BigFloat& b);

    friend BigFloat operator+(BigFloat a, const BigFloat& b) { return a += b; }
    friend BigFloat operator-(BigFloat a, const BigFloat& b) { return a -= b; }
    friend BigFloat operator*(BigFloat a, const BigFloat& b) { return a *= b; }
    friend BigFloat operator/(BigFloat a, const BigFloat& b) { return a /= b; }
    friend BigFloat operator*(BigFloat a, long k) { return a *= k; }
    friend BigFloat operator*(long k, BigFloat a) { return a *= k; }
    friend BigFloat operator/(BigFloat a, long k) { return a /= k; }

    friend bool operator==(const BigFloat& a, const BigFloat& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
    friend std::partial_ordering operator<=>(const BigFloat& a, const BigFloat& b);

private:
    mpfr_t v_;
};

BigFloat abs(const BigFloat& x);
BigFloat sqrt(const BigFloat& x);
BigFloat log(const BigFloat& x);
BigFloat exp(const BigFloat& x);
BigFloat pow(const BigFloat& x, long k);
BigFloat pow(const BigFloat& x, const BigFloat& y);
BigFloat ldexp(const BigFloat& x, long e);
BigFloat min(const BigFloat& a, const BigFloat& b);
BigFloat max(const BigFloat& a, const BigFloat& b);
BigFloat pi(Precision p);
// 2^-bits at precision p.
BigFloat ulp_scale(long bits, Precision p);

// Minimal complex arithmetic over BigFloat, enough for evaluating g-series.
struct Complex {
    BigFloat re;
    BigFloat im;

    explicit Complex(Precision p) : re(p), im(p) {}
    Complex(BigFloat r, BigFloat i) : re(std::move(r)), im(std::move(i)) {}
    static Complex real(BigFloat r);

    Precision precision() const { return re.precision(); }

    Complex& operator+=(const Complex& o);
    Complex& operator-=(const Complex& o);
    Complex& operator*=(const Complex& o);
    Complex& operator/=(const Complex& o);
    Complex& operator*=(const BigFloat& s);

    friend Complex operator+(Complex a, const Complex& b) { return a += b; }
    friend Complex operator-(Complex a, const Complex& b) { return a -= b; }
    friend Complex operator*(Complex a, const Complex& b) { return a *= b; }
    friend Complex operator/(Complex a, const Complex& b) { return a /= b; }
    friend Complex operator*(Complex a, const BigFloat& s) { return a *= s; }
};

BigFloat abs(const Complex& z);
BigFloat norm(const Complex& z);  // |z|^2

}  // namespace gkw
