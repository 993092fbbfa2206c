#pragma once

#include "gkw/bigfloat.hpp"

#include <vector>

namespace gkw {

// Linear extrapolation of a slowly converging sequence S_1, S_2, ... to its
// limit. The model is S_v = E + sum_k c_k b_k(v) with the basis
//   1/v, log v / v^2, 1/v^2, log^2 v / v^3, ..., 1/v^3, log^3 v / v^4, ..., 1/v^4,
// fitted by least squares on about 33 geometrically spaced samples in
// [V/4, V]. The basis is shortened when fewer samples are available.
struct ExtrapolationWeights {
    std::vector<long> samples;      // indices v into the sequence
    std::vector<BigFloat> weights;  // E = sum_i weights[i] * S[samples[i]]
    long basis_size = 1;            // including the constant
};

ExtrapolationWeights extrapolation_weights(long v_max, Precision p);

// `partial_sums[v]` is S_v for v = 0..V. Returns the estimated limit.
BigFloat extrapolate(const std::vector<BigFloat>& partial_sums, const ExtrapolationWeights& w);
BigFloat extrapolate(const std::vector<BigFloat>& partial_sums, Precision p);

// |E(V) - E(V/2)|: the change of the estimate when the data is halved.
BigFloat extrapolation_spread(const std::vector<BigFloat>& partial_sums, Precision p);

}  // namespace gkw
