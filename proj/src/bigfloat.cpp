#include "gkw/bigfloat.hpp"
#include "gkw/errors.hpp"

#include <cmath>
#include <utility>

namespace gkw {

namespace {

mpfr_prec_t join(const BigFloat& a, const BigFloat& b) {
    return std::max(mpfr_get_prec(a.raw()), mpfr_get_prec(b.raw()));
}

void check_precision(Precision p) {
    if (p.bits < MPFR_PREC_MIN || p.bits > 1L << 24) throw DomainError("BigFloat: precision out of range");
}

}  // namespace

BigFloat::BigFloat(Precision p) {
    check_precision(p);
    mpfr_init2(v_, p.bits);
    mpfr_set_zero(v_, 1);
}

BigFloat::BigFloat(long value, Precision p) : BigFloat(p) { mpfr_set_si(v_, value, MPFR_RNDN); }

BigFloat::BigFloat(double value, Precision p) : BigFloat(p) { mpfr_set_d(v_, value, MPFR_RNDN); }

BigFloat::BigFloat(const Integer& value, Precision p) : BigFloat(p) {
    mpfr_set_z(v_, value.get_mpz_t(), MPFR_RNDN);
}

BigFloat::BigFloat(const Rational& value, Precision p) : BigFloat(p) {
    mpfr_set_q(v_, value.get().get_mpq_t(), MPFR_RNDN);
}

BigFloat BigFloat::parse(const std::string& text, Precision p) {
    BigFloat r(p);
    if (mpfr_set_str(r.v_, text.c_str(), 10, MPFR_RNDN) != 0 && !r.is_finite())
        throw DomainError("BigFloat: cannot parse '" + text + "'");
    return r;
}

BigFloat::BigFloat(const BigFloat& other) {
    mpfr_init2(v_, mpfr_get_prec(other.v_));
    mpfr_set(v_, other.v_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& other) noexcept {
    mpfr_init2(v_, mpfr_get_prec(other.v_));
    mpfr_swap(v_, other.v_);
}

BigFloat& BigFloat::operator=(const BigFloat& other) {
    if (this != &other) {
        mpfr_set_prec(v_, mpfr_get_prec(other.v_));
        mpfr_set(v_, other.v_, MPFR_RNDN);
    }
    return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& other) noexcept {
    mpfr_swap(v_, other.v_);
    return *this;
}

BigFloat::~BigFloat() { mpfr_clear(v_); }

BigFloat BigFloat::rounded(Precision p) const {
    BigFloat r(p);
    mpfr_set(r.v_, v_, MPFR_RNDN);
    return r;
}

long BigFloat::exponent() const {
    if (!mpfr_regular_p(v_)) return 0;
    return mpfr_get_exp(v_);
}

std::string BigFloat::to_string(int digits) const {
    if (digits < 1) digits = 1;
    char* buf = nullptr;
    mpfr_asprintf(&buf, "%.*Re", digits - 1, v_);
    std::string s(buf);
    mpfr_free_str(buf);
    return s;
}

std::string BigFloat::to_string() const {
    const auto digits = static_cast<int>(std::ceil(static_cast<double>(mpfr_get_prec(v_)) * 0.30103)) + 1;
    return to_string(digits);
}

BigFloat BigFloat::operator-() const {
    BigFloat r(precision());
    mpfr_neg(r.v_, v_, MPFR_RNDN);
    return r;
}

BigFloat& BigFloat::operator+=(const BigFloat& o) {
    const auto p = join(*this, o);
    if (p != mpfr_get_prec(v_)) mpfr_prec_round(v_, p, MPFR_RNDN);
    mpfr_add(v_, v_, o.v_, MPFR_RNDN);
    return *this;
}

BigFloat& BigFloat::operator-=(const BigFloat& o) {
    const auto p = join(*this, o);
    if (p != mpfr_get_prec(v_)) mpfr_prec_round(v_, p, MPFR_RNDN);
    mpfr_sub(v_, v_, o.v_, MPFR_RNDN);
    return *this;
}

BigFloat& BigFloat::operator*=(const BigFloat& o) {
    const auto p = join(*this, o);
    if (p != mpfr_get_prec(v_)) mpfr_prec_round(v_, p, MPFR_RNDN);
    mpfr_mul(v_, v_, o.v_, MPFR_RNDN);
    return *this;
}

BigFloat& BigFloat::operator/=(const BigFloat& o) {
    const auto p = join(*this, o);
    if (p != mpfr_get_prec(v_)) mpfr_prec_round(v_, p, MPFR_RNDN);
    mpfr_div(v_, v_, o.v_, MPFR_RNDN);
    return *this;
}

BigFloat& BigFloat::operator*=(long k) {
    mpfr_mul_si(v_, v_, k, MPFR_RNDN);
    return *this;
}

BigFloat& BigFloat::operator/=(long k) {
    mpfr_div_si(v_, v_, k, MPFR_RNDN);
    return *this;
}

void BigFloat::fma_accumulate(const BigFloat& a, const BigFloat& b) {
    mpfr_fma(v_, a.v_, b.v_, v_, MPFR_RNDN);
}

std::partial_ordering operator<=>(const BigFloat& a, const BigFloat& b) {
    if (mpfr_unordered_p(a.v_, b.v_)) return std::partial_ordering::unordered;
    const int c = mpfr_cmp(a.v_, b.v_);
    if (c < 0) return std::partial_ordering::less;
    if (c > 0) return std::partial_ordering::greater;
    return std::partial_ordering::equivalent;
}

BigFloat abs(const BigFloat& x) {
    BigFloat r(x.precision());
    mpfr_abs(r.raw(), x.raw(), MPFR_RNDN);
    return r;
}

BigFloat sqrt(const BigFloat& x) {
    if (x.sign() < 0) throw DomainError("sqrt of a negative BigFloat");
    BigFloat r(x.precision());
    mpfr_sqrt(r.raw(), x.raw(), MPFR_RNDN);
    return r;
}

BigFloat log(const BigFloat& x) {
    if (x.sign() <= 0) throw DomainError("log of a non-positive BigFloat");
    BigFloat r(x.precision());
    mpfr_log(r.raw(), x.raw(), MPFR_RNDN);
    return r;
}

BigFloat exp(const BigFloat& x) {
    BigFloat r(x.precision());
    mpfr_exp(r.raw(), x.raw(), MPFR_RNDN);
    return r;
}

BigFloat pow(const BigFloat& x, long k) {
    BigFloat r(x.precision());
    mpfr_pow_si(r.raw(), x.raw(), k, MPFR_RNDN);
    return r;
}

BigFloat pow(const BigFloat& x, const BigFloat& y) {
    BigFloat r(Precision(join(x, y)));
    mpfr_pow(r.raw(), x.raw(), y.raw(), MPFR_RNDN);
    return r;
}

BigFloat ldexp(const BigFloat& x, long e) {
    BigFloat r(x);
    if (e >= 0)
        mpfr_mul_2ui(r.raw(), r.raw(), static_cast<unsigned long>(e), MPFR_RNDN);
    else
        mpfr_div_2ui(r.raw(), r.raw(), static_cast<unsigned long>(-e), MPFR_RNDN);
    return r;
}

BigFloat min(const BigFloat& a, const BigFloat& b) { return b < a ? b : a; }
BigFloat max(const BigFloat& a, const BigFloat& b) { return a < b ? b : a; }

BigFloat pi(Precision p) {
    BigFloat r(p);
    mpfr_const_pi(r.raw(), MPFR_RNDN);
    return r;
}

BigFloat ulp_scale(long bits, Precision p) { return ldexp(BigFloat(1L, p), -bits); }

Complex Complex::real(BigFloat r) {
    BigFloat zero(r.precision());
    return Complex(std::move(r), std::move(zero));
}

Complex& Complex::operator+=(const Complex& o) {
    re += o.re;
    im += o.im;
    return *this;
}

Complex& Complex::operator-=(const Complex& o) {
    re -= o.re;
    im -= o.im;
    return *this;
}

Complex& Complex::operator*=(const Complex& o) {
    BigFloat r = re * o.re - im * o.im;
    BigFloat i = re * o.im + im * o.re;
    re = std::move(r);
    im = std::move(i);
    return *this;
}

Complex& Complex::operator/=(const Complex& o) {
    const BigFloat den = norm(o);
    if (den.is_zero()) throw DomainError("Complex: division by zero");
    BigFloat r = (re * o.re + im * o.im) / den;
    BigFloat i = (im * o.re - re * o.im) / den;
    re = std::move(r);
    im = std::move(i);
    return *this;
}

Complex& Complex::operator*=(const BigFloat& s) {
    re *= s;
    im *= s;
    return *this;
}

BigFloat norm(const Complex& z) { return z.re * z.re + z.im * z.im; }

BigFloat abs(const Complex& z) {
    BigFloat r(z.precision());
    mpfr_hypot(r.raw(), z.re.raw(), z.im.raw(), MPFR_RNDN);
    return r;
}

}  // namespace gkw
