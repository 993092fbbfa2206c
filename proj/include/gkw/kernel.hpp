#pragma once

#include "gkw/bigfloat.hpp"
#include "gkw/quadratic.hpp"
#include "gkw/rational.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <ostream>
#include <string>
#include <tuple>
#include <vector>

namespace gkw {

// K(j, l): the j-th g-coefficient of the unit-shifted basis function
// (z+1-1/phi)^(l-1) / (z+1+phi)^(l+1). Exact in Q(sqrt 5), computed as
//   phi^(-l-j) 2^(-l-j) sum_a C(l-1, a) C(j, a+1) 5^(a+1),
// which is the residue at w = 3/2 of (w-1)^(l-1) (w+1)^j / (w-3/2)^j.
QuadraticNumber k_coeff(long j, long ell);

// Jacobi polynomial P_m^(alpha,beta)(x) at a rational point. Uses the three
// term recurrence when alpha, beta > -1 and the contour coefficient sum
// otherwise (negative integer alpha is allowed there).
Rational jacobi_eval(long m, long alpha, long beta, const Rational& x);
Rational jacobi_recurrence(long m, long alpha, long beta, const Rational& x);
Rational jacobi_contour_sum(long m, long alpha, long beta, const Rational& x);

// A window of one kernel column l: K(j, l) for j in [j_lo, j_hi].
struct KernelTable {
    long ell;
    long j_lo;
    long j_hi;
    std::vector<QuadraticNumber> values;  // values[j - j_lo]
    BigFloat captured_mass;               // sum over the window, rounded
    BigFloat tail_mass_bound;             // >= 1 - captured mass

    const QuadraticNumber& at(long j) const { return values.at(static_cast<std::size_t>(j - j_lo)); }
    QuadraticNumber exact_mass() const;
};

long default_window_cap(long ell);

// Grows a symmetric window around j = l until the captured mass reaches
// `mass_target`. Column sums are exactly 1, so the captured mass is a
// certified lower bound and 1 - mass bounds the tail. Throws TruncationError
// when the window would pass `j_cap` (default 8 l + 200).
KernelTable k_window(long ell, const BigFloat& mass_target, std::optional<long> j_cap = std::nullopt);

// Insert-only cache of kernel windows keyed by (l, target, cap). Concurrent
// misses may compute the same window twice; the first insert wins.
class KernelCache {
public:
    std::shared_ptr<const KernelTable> get(long ell, const BigFloat& mass_target,
                                           std::optional<long> j_cap = std::nullopt);
    std::size_t size() const;

private:
    using Key = std::tuple<long, std::string, long>;
    mutable std::mutex mutex_;
    std::map<Key, std::shared_ptr<const KernelTable>> rows_;
};

// Rounded kernel block K(j, i), 1 <= j, i <= size, stored by column with
// negligible entries (below 2^-(p+24)) dropped. Entries are computed from the
// integer recurrence e(j, l+1) = e(j-1, l+1) + e(j, l) + 4 e(j-1, l), where
// e(j, l) = [x^j] ((1+4x)/(1-x))^l and K(j, l) = (j/l) e(j, l) (2 phi)^-(j+l).
class FloatKernel {
public:
    static std::shared_ptr<const FloatKernel> build(long size, Precision p);

    long size() const { return size_; }
    Precision precision() const { return prec_; }

    // K(j, i); zero outside the stored band.
    BigFloat at(long j, long i) const;
    long column_lo(long i) const { return cols_[static_cast<std::size_t>(i - 1)].lo; }
    long column_hi(long i) const { return column_lo(i) + static_cast<long>(cols_[static_cast<std::size_t>(i - 1)].values.size()) - 1; }

    // out[j-1] = sum_{i <= m} K(j, i) in[i-1] for j <= m, where m = in.size()
    // may be smaller than size(): the leading m x m block is used.
    std::vector<BigFloat> apply(const std::vector<BigFloat>& in) const;

private:
    struct Column {
        long lo = 1;
        std::vector<BigFloat> values;
    };
    FloatKernel(long size, Precision p) : size_(size), prec_(p) {}

    long size_;
    Precision prec_;
    std::vector<Column> cols_;
};

// Process-wide kernel blocks, one per precision; a request is served by any
// cached block at least as large, otherwise a new block replaces it.
std::shared_ptr<const FloatKernel> shared_float_kernel(long size, Precision p);

// CSV with columns j,K_a,K_b,K_float where K = K_a + K_b sqrt 5.
void write_kernel_row_csv(std::ostream& out, const KernelTable& table, Precision p);

}  // namespace gkw
