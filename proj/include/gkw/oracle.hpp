#pragma once

#include "gkw/bigfloat.hpp"
#include "gkw/linalg.hpp"

#include <ostream>
#include <vector>

namespace gkw {

// Hurwitz zeta sum_{k>=0} (k + a)^-s by Euler-Maclaurin with Bernoulli terms
// B_2..B_20; the number of explicit terms is chosen so that the first omitted
// correction is below 2^-(p+4) relative to the result.
BigFloat hurwitz_zeta(long s, const BigFloat& a, Precision p);
// zeta(s, a) for s = s_min..s_max sharing one pass over the explicit terms.
std::vector<BigFloat> hurwitz_zeta_range(long s_min, long s_max, const BigFloat& a, Precision p);
BigFloat hurwitz_zeta(long s, long a, Precision p);

// Bernoulli numbers B_0..B_n, exact.
std::vector<Rational> bernoulli_numbers(long n);

// Truncated transfer operator in the Taylor basis (t - c)^k, k < N:
//   M[a][k] = sum_b C(k,b) (-c)^(k-b) (-1)^a C(a+b+1, a) zeta(a+b+2, c+1),
// the a-th Taylor coefficient at z = c of L[(t-c)^k]. Entries are computed
// with p + 2N + 64 working bits and rounded to p.
struct TruncatedOperator {
    long dim;
    Rational center;
    BigMatrix m;
};

TruncatedOperator build_matrix(long dim, Precision p, const Rational& center = Rational(1));

// Eigenvalues of a real matrix by balancing, Hessenberg reduction and
// Francis double-shift QR. Returns (re, im) pairs in no particular order.
struct EigenPair {
    BigFloat re;
    BigFloat im;
};
std::vector<EigenPair> real_eigenvalues(BigMatrix a, long max_iterations = 60);

// The `count` eigenvalues of largest modulus of the dim x dim truncation,
// ordered by decreasing modulus. Throws ConvergenceError when a requested one
// is part of a complex pair.
std::vector<BigFloat> oracle_eigenvalues(long dim, long count, Precision p, const Rational& center = Rational(1));

// CSV rows N,index,eigenvalue.
void write_spectrum_csv(std::ostream& out, long dim, const std::vector<BigFloat>& values, bool header = true);

}  // namespace gkw
