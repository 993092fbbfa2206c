#include "gkw/eigenfunction.hpp"
#include "gkw/errors.hpp"
#include "gkw/extrapolation.hpp"

#include <algorithm>

namespace gkw {

GFunction eigenfunction(const LayerState& state, bool extrapolate) {
    const Precision p = state.precision;
    const auto size = static_cast<std::size_t>(state.j_hi);
    GFunction gf;
    gf.n = state.n;
    const EigenvalueResult r = eigenvalue_from_layers(state);
    gf.lambda = extrapolate ? r.lambda_extrapolated : r.lambda;

    std::vector<BigFloat> partial(size, BigFloat(p));
    gf.coefficients.assign(size, BigFloat(p));
    if (!extrapolate || state.v_done < 4) {
        for (const auto& layer : state.what)
            for (std::size_t j = 0; j < size; ++j) gf.coefficients[j] += layer[j];
        return gf;
    }
    const ExtrapolationWeights w = extrapolation_weights(state.v_done, p);
    for (long v = 0; v <= state.v_done; ++v) {
        const auto& layer = state.what[static_cast<std::size_t>(v)];
        for (std::size_t j = 0; j < size; ++j) partial[j] += layer[j];
        for (std::size_t i = 0; i < w.samples.size(); ++i) {
            if (w.samples[i] != v) continue;
            for (std::size_t j = 0; j < size; ++j) gf.coefficients[j].fma_accumulate(w.weights[i], partial[j]);
        }
    }
    return gf;
}

namespace {

void require_half_plane(const Complex& z, const char* what) {
    const Precision p = z.precision();
    if (!(z.re > BigFloat(-0.5, p))) throw DomainError(std::string(what) + ": point outside Re z > -1/2");
}

}  // namespace

GSeriesValue eigenfunction_eval(const GFunction& gf, const Complex& z) {
    require_half_plane(z, "eigenfunction_eval");
    const Precision p = z.precision();
    const BigFloat root5 = sqrt(BigFloat(5L, p));
    const BigFloat phi = (BigFloat(1L, p) + root5) / 2L;
    const BigFloat phi_inv = phi - BigFloat(1L, p);
    const Complex zp = z + Complex::real(phi);
    const Complex t = (z - Complex::real(phi_inv)) / zp;

    Complex acc(p);
    for (auto it = gf.coefficients.rbegin(); it != gf.coefficients.rend(); ++it) {
        acc *= t;
        acc.re += *it;
    }
    const Complex denom = zp * zp;
    GSeriesValue out{acc / denom, BigFloat(p)};

    const BigFloat rho = abs(t);
    BigFloat amax(p);
    for (const auto& a : gf.coefficients) amax = max(amax, abs(a));
    out.tail_bound = amax * pow(rho, static_cast<long>(gf.coefficients.size())) /
                     ((BigFloat(1L, p) - rho) * norm(zp));
    return out;
}

BigFloat functional_equation_residual(const GFunction& gf, const BigFloat& lambda, const Complex& z) {
    if (lambda.is_zero()) throw DomainError("functional_equation_residual: lambda must be nonzero");
    const Precision p = z.precision();
    const Complex one = Complex::real(BigFloat(1L, p));
    const Complex z1 = z + one;
    const Complex w = one / z1;
    require_half_plane(z, "functional_equation_residual");
    require_half_plane(w, "functional_equation_residual");
    const Complex u = eigenfunction_eval(gf, z).value;
    const Complex u1 = eigenfunction_eval(gf, z1).value;
    const Complex uw = eigenfunction_eval(gf, w).value;
    const Complex r = u - u1 - uw / (z1 * z1 * Complex::real(lambda.rounded(p)));
    return abs(r);
}

namespace {

using Series = std::vector<QuadraticNumber>;

QuadraticNumber qzero() { return QuadraticNumber(5); }
QuadraticNumber qrat(const Rational& r) { return QuadraticNumber::rational(r, 5); }

Series multiply(const Series& a, const Series& b) {
    Series out(a.size() + b.size() - 1, qzero());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return out;
}

Series power(const Series& base, long k) {
    Series out{qrat(1)};
    for (long i = 0; i < k; ++i) out = multiply(out, base);
    return out;
}

// P((1/phi + phi w) / (1 - w)) (1 - w)^m as a polynomial in w.
Series substitute(const QPolynomial& poly, long m) {
    const Series lin{golden_pow(-1), golden_pow(1)};
    const Series one_minus{qrat(1), qrat(-1)};
    Series out{qzero()};
    for (long k = 0; k <= poly.degree(); ++k) {
        if (poly.coeffs[static_cast<std::size_t>(k)].is_zero()) continue;
        Series term = multiply(power(lin, k), power(one_minus, m - k));
        for (auto& c : term) c *= poly.coeffs[static_cast<std::size_t>(k)];
        if (term.size() > out.size()) out.resize(term.size(), qzero());
        for (std::size_t i = 0; i < term.size(); ++i) out[i] += term[i];
    }
    return out;
}

QPolynomial linear(const QuadraticNumber& c0) { return QPolynomial{{c0, qrat(1)}}; }

QPolynomial poly_power(const QPolynomial& p, long k) {
    return QPolynomial{power(p.coeffs, k)};
}

}  // namespace

RationalFunction shifted_basis(long ell, long shift) {
    if (ell < 1) throw DomainError("shifted_basis: ell must be positive");
    const QuadraticNumber s = qrat(Rational(shift));
    return RationalFunction{poly_power(linear(s - golden_pow(-1)), ell - 1), poly_power(linear(s + golden_pow(1)), ell + 1)};
}

RationalFunction reciprocal_linear(const Rational& c) {
    return RationalFunction{QPolynomial{{qrat(1)}}, linear(qrat(c))};
}

std::vector<QuadraticNumber> g_transform_exact(const RationalFunction& f, long count) {
    if (count < 1) throw DomainError("g_transform: count must be positive");
    if (f.num.coeffs.empty() || f.den.coeffs.empty()) throw DomainError("g_transform: empty polynomial");
    const long m = std::max(f.num.degree(), f.den.degree());
    Series num = substitute(f.num, m);
    for (auto& c : num) c *= Rational(5);
    const Series den = multiply(substitute(f.den, m), Series{qrat(1), qrat(-2), qrat(1)});
    if (den.front().is_zero()) throw DomainError("g_transform: pole at z = 1/phi");

    const QuadraticNumber d0_inv = den.front().inverse();
    std::vector<QuadraticNumber> out;
    out.reserve(static_cast<std::size_t>(count));
    for (long i = 0; i < count; ++i) {
        QuadraticNumber c = i < static_cast<long>(num.size()) ? num[static_cast<std::size_t>(i)] : qzero();
        for (long k = 1; k <= std::min<long>(i, static_cast<long>(den.size()) - 1); ++k)
            c -= den[static_cast<std::size_t>(k)] * out[static_cast<std::size_t>(i - k)];
        out.push_back(c * d0_inv);
    }
    return out;
}

std::vector<BigFloat> g_transform(const RationalFunction& f, long count, Precision p) {
    std::vector<BigFloat> out;
    for (const auto& c : g_transform_exact(f, count)) out.push_back(quad_to_float(c, p));
    return out;
}

}  // namespace gkw
