#include "gkw/extrapolation.hpp"
#include "gkw/errors.hpp"
#include "gkw/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace gkw {

namespace {

constexpr long kMaxBasis = 11;
constexpr long kTargetSamples = 33;

// Basis function k is log(v)^q / v^d for the k-th pair (d, q) in the order
// (0,0), (1,0), (2,1), (2,0), (3,2), (3,1), (3,0), (4,3), ...
BigFloat basis_value(long k, long v, Precision p) {
    long d = 0;
    long q = 0;
    for (long i = 0; i < k; ++i) {
        if (q > 0) {
            --q;
        } else {
            ++d;
            q = d - 1;
        }
    }
    const BigFloat x(v, p);
    return pow(log(x), q) / pow(x, d);
}

}  // namespace

ExtrapolationWeights extrapolation_weights(long v_max, Precision p) {
    if (v_max < 1) throw DomainError("extrapolation: need at least one term");
    ExtrapolationWeights out;
    if (v_max < 4) {
        out.samples = {v_max};
        out.weights = {BigFloat(1L, p)};
        return out;
    }
    const double lo = static_cast<double>(v_max) / 4.0;
    const double hi = static_cast<double>(v_max);
    for (long i = 0; i < kTargetSamples; ++i) {
        const double t = static_cast<double>(i) / static_cast<double>(kTargetSamples - 1);
        out.samples.push_back(std::lround(lo * std::pow(hi / lo, t)));
    }
    std::sort(out.samples.begin(), out.samples.end());
    out.samples.erase(std::unique(out.samples.begin(), out.samples.end()), out.samples.end());
    const long m = static_cast<long>(out.samples.size());
    out.basis_size = std::clamp(m / 2, 1L, kMaxBasis);

    const Precision work = p.plus(64);
    BigMatrix a(static_cast<std::size_t>(m), static_cast<std::size_t>(out.basis_size), work);
    for (long i = 0; i < m; ++i)
        for (long k = 0; k < out.basis_size; ++k)
            a(static_cast<std::size_t>(i), static_cast<std::size_t>(k)) = basis_value(k, out.samples[static_cast<std::size_t>(i)], work);
    for (auto& w : least_squares_first_row(a)) out.weights.push_back(w.rounded(p));
    return out;
}

BigFloat extrapolate(const std::vector<BigFloat>& partial_sums, const ExtrapolationWeights& w) {
    if (partial_sums.empty()) throw DomainError("extrapolate: empty sequence");
    BigFloat e(partial_sums.front().precision());
    for (std::size_t i = 0; i < w.samples.size(); ++i) {
        const auto v = static_cast<std::size_t>(w.samples[i]);
        if (v >= partial_sums.size()) throw DomainError("extrapolate: sample beyond the sequence");
        e.fma_accumulate(w.weights[i], partial_sums[v]);
    }
    return e;
}

BigFloat extrapolate(const std::vector<BigFloat>& partial_sums, Precision p) {
    if (partial_sums.size() < 2) throw DomainError("extrapolate: need S_0 and S_1 at least");
    return extrapolate(partial_sums, extrapolation_weights(static_cast<long>(partial_sums.size()) - 1, p));
}

BigFloat extrapolation_spread(const std::vector<BigFloat>& partial_sums, Precision p) {
    const long v = static_cast<long>(partial_sums.size()) - 1;
    if (v < 2) return abs(partial_sums.back());
    const std::vector<BigFloat> half(partial_sums.begin(), partial_sums.begin() + v / 2 + 1);
    return abs(extrapolate(partial_sums, p) - extrapolate(half, p));
}

}  // namespace gkw
