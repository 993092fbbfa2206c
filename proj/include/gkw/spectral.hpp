#pragma once

#include "gkw/bigfloat.hpp"
#include "gkw/kernel.hpp"
#include "gkw/quadratic.hpp"

#include <memory>
#include <optional>
#include <vector>

namespace gkw {

// How the index window [1, J] of the layer recurrence is chosen.
//
// J is the larger of (a) the size at which the layer-1 mass
// sum_j |w_j^(1)| stops changing by more than `mass_deficit` under doubling,
// and (b) n + spread * V + 16 for V planned layers. Truncation errors enter
// layer v only once v approaches J / 3, so (b) keeps the window ahead of the
// layers actually computed.
struct WindowPolicy {
    double mass_deficit = 1e-20;
    std::optional<long> j_cap;       // ConfigError if J would exceed it
    double spread = 3.5;
    std::optional<long> fixed_size;  // use exactly this J (diagnostics)
};

struct SpectralOptions {
    long v_max = 32;
    WindowPolicy window;
    Precision precision{128};
    // Stop with DivergenceError when layer magnitudes stop decaying.
    bool check_divergence = true;
};

long choose_window(long n, long planned_layers, const WindowPolicy& policy, Precision p);

// Normalized recurrence state for one eigenvalue index n over j = 1..J.
// W[v] = phi^(-2nv) V^(v)(n) and what[v][j-1] = phi^(-2nv) q_j^(v)(n).
struct LayerState {
    long n = 0;
    long v_done = 0;
    long j_hi = 0;  // window is [1, j_hi]
    Precision precision{128};
    std::vector<BigFloat> W;
    std::vector<std::vector<BigFloat>> what;
    std::vector<std::vector<BigFloat>> kw;  // kw[v] = K * what[v]
    std::vector<BigFloat> inv_divisor;      // 1 / (1 - (-1)^(n+j) phi^(2n-2j)), zero at j = n
    std::shared_ptr<const FloatKernel> kernel;
};

LayerState init_layers(long n, const WindowPolicy& policy, long planned_layers, Precision p);
LayerState advance_layer(LayerState state);
// Runs the recurrence to v_max layers.
LayerState compute_layers(long n, const SpectralOptions& opts);

// Throws DivergenceError when max |W| over (v/2, v] is not below the max over
// (v/4, v/2]; no-op before v = 16. compute_layers calls it at powers of two.
void check_divergence(const LayerState& state);

struct EigenvalueResult {
    long n = 0;
    BigFloat lambda{Precision(128)};               // (-1)^(n+1) phi^(-2n) sum_{l <= V} W_l
    BigFloat lambda_extrapolated{Precision(128)};  // limit estimate of the same series
    BigFloat extrapolation_error{Precision(128)};  // |E(V) - E(V/2)|, heuristic
    std::vector<BigFloat> layers;                  // W_0 .. W_V
    std::vector<BigFloat> contributions;           // phi^(-2n) W_l
    long v_max = 0;
    long j_lo = 1;
    long j_hi = 0;
    // Tail of the partial sum: the C / (l^2 sqrt n) layer bound with fitted C,
    // and the distance to the extrapolated limit (labeled heuristic).
    BigFloat tail_conservative{Precision(128)};
    BigFloat tail_heuristic{Precision(128)};
    BigFloat fitted_c{Precision(128)};  // max_v |W_v| v^2 sqrt n
    Precision precision{128};
};

EigenvalueResult eigenvalue(long n, const SpectralOptions& opts);
EigenvalueResult eigenvalue_from_layers(const LayerState& state);

// (-1)^(n+1) phi^(-2n) sum_l omega^l W_l over the stored layers.
BigFloat eigenvalue_omega(const EigenvalueResult& result, const BigFloat& omega);

// (-1)^(n+1) phi^(-2n) at precision p, the n-th eigenvalue of the unshifted part.
BigFloat unperturbed_eigenvalue(long n, Precision p);

// Layers from the simplified recursion in which only terms of size 1/sqrt(n)
// are kept: layer 1 is exact and for v >= 2
//   W[v] = sum_i K(n,i) w_i^(v-1),  w_j^(v) = sum_{i != n} K(j,i) w_i^(v-1) / D_j.
std::vector<BigFloat> simplified_layers(long n, long v_max, const WindowPolicy& policy, Precision p);

// W_0, W_1, W_2 in exact arithmetic on the window [1, J].
std::vector<QuadraticNumber> exact_layers(long n, long j_hi);

}  // namespace gkw
