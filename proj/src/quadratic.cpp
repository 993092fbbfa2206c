#include "gkw/quadratic.hpp"
#include "gkw/errors.hpp"

#include <utility>

namespace gkw {

QuadraticNumber::QuadraticNumber(long d) : a_(0), b_(0), d_(d) {
    if (d <= 0) throw DomainError("QuadraticNumber: discriminant must be positive");
}

QuadraticNumber::QuadraticNumber(Rational a, Rational b, long d) : a_(std::move(a)), b_(std::move(b)), d_(d) {
    if (d <= 0) throw DomainError("QuadraticNumber: discriminant must be positive");
    if (d == 1) {
        a_ += b_;
        b_ = Rational(0);
    }
}

void QuadraticNumber::require_same_field(const QuadraticNumber& o) const {
    if (d_ != o.d_)
        throw DomainError("QuadraticNumber: mismatched discriminants " + std::to_string(d_) + " and " +
                          std::to_string(o.d_));
}

int QuadraticNumber::sign() const {
    const int sa = a_.sign();
    const int sb = b_.sign();
    if (sb == 0) return sa;
    if (sa == 0) return sb;
    if (sa == sb) return sa;
    // Mixed signs: compare a^2 with d b^2.
    const Rational lhs = a_ * a_;
    const Rational rhs = b_ * b_ * Rational(d_);
    if (lhs == rhs) return 0;
    return lhs > rhs ? sa : sb;
}

Rational QuadraticNumber::field_norm() const { return a_ * a_ - Rational(d_) * b_ * b_; }

QuadraticNumber QuadraticNumber::inverse() const {
    const Rational n = field_norm();
    if (n.is_zero()) throw DomainError("QuadraticNumber: inverse of zero");
    return QuadraticNumber(a_ / n, -b_ / n, d_);
}

QuadraticNumber QuadraticNumber::pow(long k) const {
    if (k < 0) return inverse().pow(-k);
    QuadraticNumber result = rational(Rational(1), d_);
    QuadraticNumber base = *this;
    while (k > 0) {
        if (k & 1) result *= base;
        k >>= 1;
        if (k) base *= base;
    }
    return result;
}

QuadraticNumber& QuadraticNumber::operator+=(const QuadraticNumber& o) {
    require_same_field(o);
    a_ += o.a_;
    b_ += o.b_;
    return *this;
}

QuadraticNumber& QuadraticNumber::operator-=(const QuadraticNumber& o) {
    require_same_field(o);
    a_ -= o.a_;
    b_ -= o.b_;
    return *this;
}

QuadraticNumber& QuadraticNumber::operator*=(const QuadraticNumber& o) {
    require_same_field(o);
    Rational a = a_ * o.a_ + Rational(d_) * b_ * o.b_;
    Rational b = a_ * o.b_ + b_ * o.a_;
    a_ = std::move(a);
    b_ = std::move(b);
    return *this;
}

QuadraticNumber& QuadraticNumber::operator/=(const QuadraticNumber& o) {
    require_same_field(o);
    return *this *= o.inverse();
}

QuadraticNumber& QuadraticNumber::operator*=(const Rational& r) {
    a_ *= r;
    b_ *= r;
    return *this;
}

bool operator==(const QuadraticNumber& x, const QuadraticNumber& y) {
    return x.d_ == y.d_ && x.a_ == y.a_ && x.b_ == y.b_;
}

std::string QuadraticNumber::str() const {
    return a_.str() + " + " + b_.str() + "*sqrt(" + std::to_string(d_) + ")";
}

std::strong_ordering quad_compare(const QuadraticNumber& x, const QuadraticNumber& y) {
    if (x.d() != y.d()) throw DomainError("quad_compare: mismatched discriminants");
    const int s = (x - y).sign();
    if (s < 0) return std::strong_ordering::less;
    if (s > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

BigFloat quad_to_float(const QuadraticNumber& x, Precision p) {
    if (p.bits < 16) throw DomainError("quad_to_float: precision must be at least 16 bits");
    // Each step below is correctly rounded at p + 16 bits and involves no
    // cancellation, so the relative error before the final rounding is far
    // below 2^-p and the total stays within 1 ulp.
    const Precision work = p.plus(16);
    if (x.is_rational()) return BigFloat(x.a(), p);
    const BigFloat root = sqrt(BigFloat(x.d(), work));
    const int sa = x.a().sign();
    const int sb = x.b().sign();
    BigFloat value(work);
    if (sa == 0 || sa == sb) {
        value = BigFloat(x.a(), work) + BigFloat(x.b(), work) * root;
    } else {
        // a + b sqrt d = (a^2 - d b^2) / (a - b sqrt d), and a, -b share a sign.
        const BigFloat den = BigFloat(x.a(), work) - BigFloat(x.b(), work) * root;
        value = BigFloat(x.field_norm(), work) / den;
    }
    return value.rounded(p);
}

QuadraticNumber golden_ratio() { return QuadraticNumber(Rational(1, 2), Rational(1, 2), 5); }

QuadraticNumber golden_pow(long k) { return golden_ratio().pow(k); }

std::pair<long, long> split_square(long n) {
    if (n <= 0) throw DomainError("split_square: argument must be positive");
    long s = 1;
    long d = n;
    for (long f = 2; f * f <= d; ++f) {
        while (d % (f * f) == 0) {
            d /= f * f;
            s *= f;
        }
    }
    return {s, d};
}

}  // namespace gkw
