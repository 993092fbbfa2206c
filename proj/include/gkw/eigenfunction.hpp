#pragma once

#include "gkw/bigfloat.hpp"
#include "gkw/quadratic.hpp"
#include "gkw/spectral.hpp"

#include <vector>

namespace gkw {

// Function given by its g-coefficients:
//   U(z) = sum_j A_j (z - 1/phi)^(j-1) / (z + phi)^(j+1),  j = 1..J.
struct GFunction {
    long n = 0;  // eigenvalue index, 0 when not an eigenfunction
    BigFloat lambda{Precision(128)};
    std::vector<BigFloat> coefficients;  // A_1 .. A_J
};

// Eigenfunction of index n from the layers: A = sum_v what^(v), extrapolated
// in v with the same linear weights as the eigenvalue when `extrapolate` is
// set. Normalized by A_n = 1.
GFunction eigenfunction(const LayerState& state, bool extrapolate = true);

struct GSeriesValue {
    Complex value;
    BigFloat tail_bound;  // bound on the omitted terms j > J
};

// Requires Re z > -1/2, where |z - 1/phi| < |z + phi|.
GSeriesValue eigenfunction_eval(const GFunction& gf, const Complex& z);

// |U(z) - U(z+1) - U(1/(z+1)) / (lambda (z+1)^2)|.
BigFloat functional_equation_residual(const GFunction& gf, const BigFloat& lambda, const Complex& z);

// Polynomial in z with coefficients in Q(sqrt 5), lowest degree first.
struct QPolynomial {
    std::vector<QuadraticNumber> coeffs;
    long degree() const { return static_cast<long>(coeffs.size()) - 1; }
};

struct RationalFunction {
    QPolynomial num;
    QPolynomial den;
};

// e_l(z + shift) = (z + shift - 1/phi)^(l-1) / (z + shift + phi)^(l+1).
RationalFunction shifted_basis(long ell, long shift);
// 1 / (z + c).
RationalFunction reciprocal_linear(const Rational& c);

// g-coefficients a_1..a_count of f: the Taylor coefficients of
//   g(w) = 5 / (1-w)^2 * f((1/phi + phi w) / (1 - w))
// at w = 0. Throws DomainError when f has a pole at z = 1/phi.
std::vector<QuadraticNumber> g_transform_exact(const RationalFunction& f, long count);
std::vector<BigFloat> g_transform(const RationalFunction& f, long count, Precision p);

}  // namespace gkw
