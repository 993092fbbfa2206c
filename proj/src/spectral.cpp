#include "gkw/spectral.hpp"
#include "gkw/errors.hpp"
#include "gkw/extrapolation.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace gkw {

namespace {

// 1 - (-1)^(n+j) phi^(2n-2j), exact.
QuadraticNumber divisor(long n, long j) {
    const QuadraticNumber one = QuadraticNumber::rational(Rational(1), 5);
    const QuadraticNumber power = golden_pow(2 * n - 2 * j);
    return (n + j) % 2 == 0 ? one - power : one + power;
}

void check_divisor_bound(long n, long j, const QuadraticNumber& d) {
    const QuadraticNumber bound = QuadraticNumber::rational(Rational(1), 5) - golden_pow(-2);
    const QuadraticNumber magnitude = d.sign() < 0 ? -d : d;
    if (quad_compare(magnitude, bound) < 0)
        throw std::logic_error("divisor below 1 - phi^-2 at n=" + std::to_string(n) + ", j=" + std::to_string(j));
}

BigFloat max_abs(const std::vector<BigFloat>& w, long from, long to, Precision p) {
    BigFloat m(p);
    for (long v = from; v <= to; ++v) m = max(m, abs(w[static_cast<std::size_t>(v)]));
    return m;
}

BigFloat sign_scale(long n, Precision p) {
    BigFloat s = quad_to_float(golden_pow(-2 * n), p);
    return n % 2 == 1 ? s : -s;
}

}  // namespace

long choose_window(long n, long planned_layers, const WindowPolicy& policy, Precision p) {
    if (n < 1) throw DomainError("window: n must be positive");
    if (policy.fixed_size) {
        if (*policy.fixed_size < n) throw ConfigError("window [1, " + std::to_string(*policy.fixed_size) +
                                                      "] does not contain j = " + std::to_string(n));
        return *policy.fixed_size;
    }
    if (!(policy.mass_deficit > 0)) throw ConfigError("window: mass deficit must be positive");
    if (planned_layers < 0 || policy.spread < 0) throw ConfigError("window: negative layer count or spread");

    // Layer-1 mass sum_j K(j, n) / |D_j| for growing j, in doubling steps.
    const Precision work = p.plus(32);
    const BigFloat tol(policy.mass_deficit, work);
    std::vector<BigFloat> prefix{BigFloat(work)};
    auto mass_to = [&](long size) {
        while (static_cast<long>(prefix.size()) <= size) {
            const long j = static_cast<long>(prefix.size());
            BigFloat term(work);
            if (j != n) term = abs(quad_to_float(k_coeff(j, n) / divisor(n, j), work));
            prefix.push_back(prefix.back() + term);
        }
        return prefix[static_cast<std::size_t>(size)];
    };
    long size = 2 * n + 16;
    const long doubling_cap = 64 * n + 4096;
    while (abs(mass_to(2 * size) - mass_to(size)) > tol) {
        size *= 2;
        if (size > doubling_cap)
            throw TruncationError("window: layer-1 mass did not settle for n=" + std::to_string(n), mass_to(size).to_double());
    }
    const long layered = n + static_cast<long>(std::ceil(policy.spread * static_cast<double>(planned_layers))) + 16;
    const long j = std::max(size, layered);
    if (policy.j_cap && j > *policy.j_cap)
        throw ConfigError("window J=" + std::to_string(j) + " exceeds the cap " + std::to_string(*policy.j_cap) +
                          " for n=" + std::to_string(n));
    return j;
}

LayerState init_layers(long n, const WindowPolicy& policy, long planned_layers, Precision p) {
    LayerState s;
    s.n = n;
    s.precision = p;
    s.j_hi = choose_window(n, planned_layers, policy, p);
    s.kernel = shared_float_kernel(s.j_hi, p);

    s.inv_divisor.assign(static_cast<std::size_t>(s.j_hi), BigFloat(p));
    for (long j = 1; j <= s.j_hi; ++j) {
        if (j == n) continue;
        const QuadraticNumber d = divisor(n, j);
        check_divisor_bound(n, j, d);
        s.inv_divisor[static_cast<std::size_t>(j - 1)] = quad_to_float(d.inverse(), p);
    }

    s.W.push_back(BigFloat(1L, p));
    std::vector<BigFloat> unit(static_cast<std::size_t>(s.j_hi), BigFloat(p));
    unit[static_cast<std::size_t>(n - 1)] = BigFloat(1L, p);
    s.kw.push_back(s.kernel->apply(unit));
    s.what.push_back(std::move(unit));
    return s;
}

LayerState advance_layer(LayerState s) {
    const long v = s.v_done + 1;
    const Precision p = s.precision;
    const auto size = static_cast<std::size_t>(s.j_hi);
    const auto ni = static_cast<std::size_t>(s.n - 1);

    // s_j = sum_{r<v} (K what^(v-r-1))_j W[r]
    std::vector<BigFloat> acc(size, BigFloat(p));
    for (long r = 0; r < v; ++r) {
        const BigFloat& wr = s.W[static_cast<std::size_t>(r)];
        const auto& col = s.kw[static_cast<std::size_t>(v - r - 1)];
        for (std::size_t j = 0; j < size; ++j) acc[j].fma_accumulate(col[j], wr);
    }
    BigFloat w_v = acc[ni];

    // The r = v term of sum_{r=1}^{v} what^(v-r) W[r] vanishes off j = n.
    for (long r = 1; r < v; ++r) {
        const BigFloat minus_wr = -s.W[static_cast<std::size_t>(r)];
        const auto& prev = s.what[static_cast<std::size_t>(v - r)];
        for (std::size_t j = 0; j < size; ++j) acc[j].fma_accumulate(prev[j], minus_wr);
    }
    for (std::size_t j = 0; j < size; ++j) acc[j] *= s.inv_divisor[j];
    acc[ni] = BigFloat(p);

    s.W.push_back(std::move(w_v));
    s.kw.push_back(s.kernel->apply(acc));
    s.what.push_back(std::move(acc));
    s.v_done = v;
    return s;
}

LayerState compute_layers(long n, const SpectralOptions& opts) {
    if (opts.v_max < 1) throw ConfigError("v_max must be at least 1");
    LayerState s = init_layers(n, opts.window, opts.v_max, opts.precision);
    while (s.v_done < opts.v_max) {
        s = advance_layer(std::move(s));
        const long v = s.v_done;
        if (opts.check_divergence && ((v & (v - 1)) == 0 || v == opts.v_max)) check_divergence(s);
    }
    return s;
}

void check_divergence(const LayerState& s) {
    const long v = s.v_done;
    if (v < 16) return;
    const BigFloat recent = max_abs(s.W, v / 2 + 1, v, s.precision);
    const BigFloat earlier = max_abs(s.W, v / 4 + 1, v / 2, s.precision);
    if (recent >= earlier)
        throw DivergenceError("layers stopped decaying for n=" + std::to_string(s.n) + " at v=" + std::to_string(v) +
                              " (max |W| " + recent.to_string(6) + " over (v/2, v] vs " + earlier.to_string(6) +
                              " over (v/4, v/2]); window J=" + std::to_string(s.j_hi) + " is too small");
}

BigFloat unperturbed_eigenvalue(long n, Precision p) { return sign_scale(n, p); }

EigenvalueResult eigenvalue_from_layers(const LayerState& s) {
    const Precision p = s.precision;
    EigenvalueResult r;
    r.n = s.n;
    r.precision = p;
    r.v_max = s.v_done;
    r.j_hi = s.j_hi;
    r.layers = s.W;

    const BigFloat scale = quad_to_float(golden_pow(-2 * s.n), p);
    const BigFloat signed_scale = sign_scale(s.n, p);
    std::vector<BigFloat> partial;
    BigFloat sum(p);
    for (const auto& w : s.W) {
        sum += w;
        partial.push_back(sum);
        r.contributions.push_back(scale * w);
    }
    r.lambda = signed_scale * sum;

    const BigFloat root_n = sqrt(BigFloat(s.n, p));
    r.fitted_c = BigFloat(p);
    for (long v = 1; v <= s.v_done; ++v)
        r.fitted_c = max(r.fitted_c, abs(s.W[static_cast<std::size_t>(v)]) * BigFloat(v * v, p) * root_n);
    r.tail_conservative = scale * r.fitted_c / (BigFloat(s.v_done, p) * root_n);

    if (s.v_done >= 4) {
        const BigFloat limit = extrapolate(partial, p);
        const BigFloat spread = extrapolation_spread(partial, p);
        r.lambda_extrapolated = signed_scale * limit;
        r.extrapolation_error = scale * spread;
        r.tail_heuristic = scale * (abs(limit - sum) + spread);
    } else {
        r.lambda_extrapolated = r.lambda;
        r.extrapolation_error = r.tail_conservative;
        r.tail_heuristic = r.tail_conservative;
    }
    return r;
}

EigenvalueResult eigenvalue(long n, const SpectralOptions& opts) {
    if (n < 1) throw DomainError("eigenvalue: n must be positive");
    return eigenvalue_from_layers(compute_layers(n, opts));
}

BigFloat eigenvalue_omega(const EigenvalueResult& result, const BigFloat& omega) {
    const Precision p = result.precision;
    BigFloat acc(p);
    for (auto it = result.layers.rbegin(); it != result.layers.rend(); ++it) {
        acc *= omega;
        acc += *it;
    }
    return sign_scale(result.n, p) * acc;
}

std::vector<BigFloat> simplified_layers(long n, long v_max, const WindowPolicy& policy, Precision p) {
    if (v_max < 1) throw ConfigError("v_max must be at least 1");
    LayerState s = init_layers(n, policy, v_max, p);
    s = advance_layer(std::move(s));
    std::vector<BigFloat> w = s.W;
    std::vector<BigFloat> q = s.what.back();
    std::vector<BigFloat> kq = s.kw.back();
    const auto ni = static_cast<std::size_t>(n - 1);
    for (long v = 2; v <= v_max; ++v) {
        w.push_back(kq[ni]);
        for (std::size_t j = 0; j < q.size(); ++j) q[j] = kq[j] * s.inv_divisor[j];
        q[ni] = BigFloat(p);
        kq = s.kernel->apply(q);
    }
    return w;
}

std::vector<QuadraticNumber> exact_layers(long n, long j_hi) {
    if (n < 1 || j_hi < n) throw ConfigError("exact_layers: window must contain j = n");
    const QuadraticNumber knn = k_coeff(n, n);
    QuadraticNumber w2 = knn * knn;
    for (long i = 1; i <= j_hi; ++i) {
        if (i == n) continue;
        w2 += k_coeff(n, i) * k_coeff(i, n) / divisor(n, i);
    }
    return {QuadraticNumber::rational(Rational(1), 5), knn, w2};
}

}  // namespace gkw
