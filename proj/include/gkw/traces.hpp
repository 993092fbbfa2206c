#pragma once

#include "gkw/bigfloat.hpp"
#include "gkw/quadratic.hpp"
#include "gkw/spectral.hpp"

#include <ostream>
#include <string>
#include <vector>

namespace gkw {

// Purely periodic continued fraction: xi_l = [0; l, l, ...] for a single
// period, or the product xi_{i,j} xi_{j,i} for the period (i, j).
struct FixedPoint {
    enum class Kind { single, pair };
    Kind kind;
    long i;
    long j;  // equals i for singles
    QuadraticNumber value;
};

// Positive root of x^2 + l x - 1, in Q(sqrt(l^2 + 4)).
FixedPoint xi_single(long ell);
// xi_{i,j} = [0; i, j, i, j, ...], the positive root of i x^2 + ij x - j.
QuadraticNumber xi_pair(long i, long j);
// xi_{i,j} xi_{j,i} = (t + 2 - sqrt(t^2 + 4t)) / 2 with t = ij.
FixedPoint xi_pair_product(long i, long j);

// 1 / (xi_l^-2 + 1) and 1 / ((xi_{i,j} xi_{j,i})^-2 - 1), exact.
QuadraticNumber single_term(long ell);
QuadraticNumber pair_term(long i, long j);

struct TraceReport {
    int power = 1;
    BigFloat value{Precision(128)};
    std::string method;
    long terms = 0;
    BigFloat tail_bound{Precision(128)};
};

// Tr L = sum_l 1/(xi_l^-2 + 1): terms l <= L summed directly, the rest from
// the expansion of the summand in 1/l^2 with Hurwitz zeta tails.
TraceReport trace1_fixed_points(long terms, Precision p);
// Tr L = 1/2 - 1/(2 sqrt 5) + 1/2 sum_k (-1)^(k-1) C(2k,k) (zeta(2k) - 1),
// summed with the Euler transform.
TraceReport trace1_zeta_series(long terms, Precision p);
// Tr L^2 = sum_{i,j} 1/((xi_{i,j} xi_{j,i})^-2 - 1) over i + j <= L, with the
// tail bounded through 1/(ij)^2.
TraceReport trace2_pair_sum(long max_sum, Precision p);
// Same sum grouped by t = ij: terms t <= T summed with the divisor function,
// the rest from the expansion of the summand in 1/t.
TraceReport trace2_divisor_series(long t_split, Precision p);

// Both methods for Tr L^k (k = 1 or 2); throws ConsistencyError when they
// differ by more than their combined tail bounds (plus `slack`).
std::vector<TraceReport> trace_power(int k, long terms, Precision p, double slack = 0.0);

struct IdentityReport {
    long ell = 0;
    long n_max = 0;
    BigFloat lhs{Precision(128)};
    BigFloat target{Precision(128)};
    BigFloat residual{Precision(128)};
};

// W_v(n) for n = 1..n_max and v = 0..layers, table[n-1][v].
std::vector<std::vector<BigFloat>> layer_table(long n_max, long layers, const SpectralOptions& opts);

// |sum_{n <= n_max} (-1)^(n+1) phi^(-2n) W_{l-1}(n) - 1/(xi_l^-2 + 1)|
IdentityReport column_identity(long ell, long n_max, const SpectralOptions& opts);
// |sum_{i+j=l} sum_n phi^(-4n) W_{i-1}(n) W_{j-1}(n) - sum_{i+j=l} 1/((xi_{i,j} xi_{j,i})^-2 - 1)|, l >= 2
IdentityReport pair_identity(long ell, long n_max, const SpectralOptions& opts);
// Coefficient of omega^(l-1) in Tr L_omega (power 1) or omega^(l-2) in
// Tr L_omega^2 (power 2); these are the column and pair identities.
IdentityReport omega_trace_identity(int power, long ell, long n_max, const SpectralOptions& opts);

// Entries (-1)^(n+1) phi^(-2n) W_{l-1}(n): rows sum towards lambda_n, columns
// towards 1/(xi_l^-2 + 1).
struct DecompositionMatrix {
    long n_max = 0;
    long ell_max = 0;
    std::vector<std::vector<BigFloat>> entries;  // [n-1][l-1]
    std::vector<BigFloat> row_sums;
    std::vector<BigFloat> column_sums;
    std::vector<BigFloat> column_targets;
};

DecompositionMatrix decomposition_matrix(long n_max, long ell_max, const SpectralOptions& opts);
void write_decomposition_csv(std::ostream& out, const DecompositionMatrix& m);

}  // namespace gkw
