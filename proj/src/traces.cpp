#include "gkw/traces.hpp"
#include "gkw/errors.hpp"
#include "gkw/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace gkw {

FixedPoint xi_single(long ell) {
    if (ell < 1) throw DomainError("xi_single: ell must be positive");
    const auto [s, d] = split_square(ell * ell + 4);
    return FixedPoint{FixedPoint::Kind::single, ell, ell, QuadraticNumber(Rational(-ell, 2), Rational(s, 2), d)};
}

QuadraticNumber xi_pair(long i, long j) {
    if (i < 1 || j < 1) throw DomainError("xi_pair: indices must be positive");
    const long t = i * j;
    const auto [s, d] = split_square(t * t + 4 * t);
    return QuadraticNumber(Rational(-t, 2 * i), Rational(s, 2 * i), d);
}

FixedPoint xi_pair_product(long i, long j) {
    if (i < 1 || j < 1) throw DomainError("xi_pair_product: indices must be positive");
    const long t = i * j;
    const auto [s, d] = split_square(t * t + 4 * t);
    return FixedPoint{FixedPoint::Kind::pair, i, j, QuadraticNumber(Rational(t + 2, 2), Rational(-s, 2), d)};
}

QuadraticNumber single_term(long ell) {
    const QuadraticNumber x = xi_single(ell).value;
    const QuadraticNumber one = QuadraticNumber::rational(Rational(1), x.d());
    return (x.pow(-2) + one).inverse();
}

QuadraticNumber pair_term(long i, long j) {
    const QuadraticNumber x = xi_pair_product(i, j).value;
    const QuadraticNumber one = QuadraticNumber::rational(Rational(1), x.d());
    return (x.pow(-2) - one).inverse();
}

namespace {

using RSeries = std::vector<Rational>;

// sqrt(1 + 4x) to order `count`.
RSeries sqrt_one_plus_4x(long count) {
    RSeries out;
    Rational c(1);
    for (long k = 0; k < count; ++k) {
        out.push_back(c);
        // C(1/2, k+1) 4^(k+1) = C(1/2, k) 4^k * 4 (1/2 - k) / (k + 1)
        c = c * Rational(2 - 4 * k, k + 1);
    }
    return out;
}

RSeries series_divide(const RSeries& num, const RSeries& den, long count) {
    if (den.front().is_zero()) throw DomainError("series division by a series with zero constant term");
    RSeries out;
    for (long i = 0; i < count; ++i) {
        Rational c = i < static_cast<long>(num.size()) ? num[static_cast<std::size_t>(i)] : Rational(0);
        for (long k = 1; k <= std::min<long>(i, static_cast<long>(den.size()) - 1); ++k)
            c -= den[static_cast<std::size_t>(k)] * out[static_cast<std::size_t>(i - k)];
        out.push_back(c / den.front());
    }
    return out;
}

RSeries series_multiply(const RSeries& a, const RSeries& b, long count) {
    RSeries out(static_cast<std::size_t>(count), Rational(0));
    for (std::size_t i = 0; i < a.size() && static_cast<long>(i) < count; ++i)
        for (std::size_t j = 0; j < b.size() && static_cast<long>(i + j) < count; ++j) out[i + j] += a[i] * b[j];
    return out;
}

// 1/(l y + 2) with y = 1/xi_l, as a series in u = 1/l^2: 2u / (1 + sqrt(1+4u) + 4u).
RSeries single_term_series(long count) {
    RSeries den = sqrt_one_plus_4x(count + 1);
    den[0] += Rational(1);
    den[1] += Rational(4);
    return series_divide(RSeries{Rational(0), Rational(2)}, den, count);
}

// 2/(sqrt D (sqrt D + t + 2)), D = t^2 + 4t, as a series in s = 1/t:
// 2 s^2 / ((1 + 4s) + (1 + 2s) sqrt(1 + 4s)).
RSeries pair_term_series(long count) {
    RSeries den = series_multiply(RSeries{Rational(1), Rational(2)}, sqrt_one_plus_4x(count + 1), count + 1);
    den[0] += Rational(1);
    den[1] += Rational(4);
    return series_divide(RSeries{Rational(0), Rational(0), Rational(2)}, den, count);
}

// max_k |c_k| / 4^k over the series: with radius 1/4 this bounds the growth.
BigFloat growth_constant(const RSeries& c, Precision p) {
    BigFloat a(p);
    for (std::size_t k = 0; k < c.size(); ++k)
        a = max(a, abs(BigFloat(c[k], p)) / pow(BigFloat(4L, p), static_cast<long>(k)));
    return a;
}

BigFloat single_term_float(long ell, Precision p) {
    const BigFloat l(ell, p);
    const BigFloat y = (l + sqrt(l * l + BigFloat(4L, p))) / 2L;
    return BigFloat(1L, p) / (l * y + BigFloat(2L, p));
}

BigFloat pair_term_float(long t, Precision p) {
    const BigFloat tt(t, p);
    const BigFloat root = sqrt(tt * tt + BigFloat(4 * t, p));
    return BigFloat(2L, p) / (root * (root + tt + BigFloat(2L, p)));
}

long series_length(long bits, double ratio) {
    return static_cast<long>(std::ceil(static_cast<double>(bits) / -std::log2(ratio))) + 2;
}

}  // namespace

TraceReport trace1_fixed_points(long terms, Precision p) {
    if (terms < 3) throw DomainError("trace1_fixed_points: need at least 3 explicit terms");
    const Precision work = p.plus(32);
    BigFloat head(work);
    for (long l = 1; l <= terms; ++l) head += single_term_float(l, work);

    const double ratio = 4.0 / static_cast<double>((terms + 1) * (terms + 1));
    const long k_max = series_length(work.bits, ratio);
    const RSeries c = single_term_series(k_max + 1);
    const std::vector<BigFloat> zetas = hurwitz_zeta_range(2, 2 * k_max, BigFloat(terms + 1, work), work);
    BigFloat tail(work);
    for (long k = 1; k <= k_max; ++k)
        tail += BigFloat(c[static_cast<std::size_t>(k)], work) * zetas[static_cast<std::size_t>(2 * k - 2)];

    // |c_k| <= A 4^k and zeta(2k, L+1) <= (L+1)^(-2k) (L+2).
    const BigFloat r(ratio, work);
    const BigFloat bound = BigFloat(2L, work) * growth_constant(c, work) * pow(r, k_max + 1) /
                           (BigFloat(1L, work) - r) * BigFloat(terms + 2, work);
    TraceReport out;
    out.power = 1;
    out.method = "fixed-point sum";
    out.terms = terms;
    out.value = (head + tail).rounded(p);
    out.tail_bound = (bound + ulp_scale(p.bits - 1, work)).rounded(p);
    return out;
}

TraceReport trace1_zeta_series(long terms, Precision p) {
    if (terms < 1) throw DomainError("trace1_zeta_series: need at least one term");
    const Precision work = p.plus(terms + 32);
    // d[k-1] = C(2k, k) (zeta(2k) - 1) for k = 1..terms, summed with alternating signs.
    const std::vector<BigFloat> zetas = hurwitz_zeta_range(2, 2 * terms, BigFloat(2L, work), work);
    std::vector<BigFloat> d;
    for (long k = 1; k <= terms; ++k)
        d.push_back(BigFloat(binomial(2 * k, k), work) * zetas[static_cast<std::size_t>(2 * k - 2)]);
    const BigFloat b0 = d.front();

    BigFloat sum(work);
    BigFloat weight(0.5, work);
    for (long n = 0; n < terms; ++n) {
        const BigFloat term = d.front() * weight;
        if (n % 2 == 0) sum += term; else sum -= term;
        weight /= 2L;
        for (std::size_t i = 0; i + 1 < d.size(); ++i) d[i] = d[i + 1] - d[i];
        d.pop_back();
    }
    const BigFloat root5 = sqrt(BigFloat(5L, work));
    const BigFloat value = BigFloat(0.5, work) - BigFloat(1L, work) / (2L * root5) + sum / 2L;

    TraceReport out;
    out.power = 1;
    out.method = "zeta series (Euler transform)";
    out.terms = terms;
    out.value = value.rounded(p);
    // Totally monotone terms: |Delta^n b_0| <= b_0, so the omitted part of the
    // transformed series is at most b_0 2^-terms (halved by the outer 1/2).
    out.tail_bound = (ldexp(b0, -terms - 1) + ulp_scale(p.bits - 1, work)).rounded(p);
    return out;
}

TraceReport trace2_pair_sum(long max_sum, Precision p) {
    if (max_sum < 2) throw DomainError("trace2_pair_sum: need i + j <= L with L >= 2");
    const Precision work = p.plus(32);
    BigFloat sum(work);
    for (long i = 1; i < max_sum; ++i)
        for (long j = 1; i + j <= max_sum; ++j) sum += pair_term_float(i * j, work);
    // Each term is at most 1/(ij)^2, and i + j > L forces max(i, j) > L/2.
    const BigFloat zeta2 = hurwitz_zeta(2, 1L, work);
    const BigFloat bound = BigFloat(2L, work) * zeta2 * hurwitz_zeta(2, max_sum / 2 + 1, work);
    TraceReport out;
    out.power = 2;
    out.method = "pair sum";
    out.terms = max_sum;
    out.value = sum.rounded(p);
    out.tail_bound = (bound + ulp_scale(p.bits - 8, work)).rounded(p);
    return out;
}

TraceReport trace2_divisor_series(long t_split, Precision p) {
    if (t_split < 8) throw DomainError("trace2_divisor_series: split point must be at least 8");
    const Precision work = p.plus(32);
    std::vector<long> divisors(static_cast<std::size_t>(t_split + 1), 0);
    for (long i = 1; i <= t_split; ++i)
        for (long t = i; t <= t_split; t += i) ++divisors[static_cast<std::size_t>(t)];
    BigFloat head(work);
    for (long t = 1; t <= t_split; ++t) head += BigFloat(divisors[static_cast<std::size_t>(t)], work) * pair_term_float(t, work);

    // sum_{t > T} d(t) t^-k = sum_{i <= T} i^-k zeta(k, floor(T/i) + 1) + zeta(k) zeta(k, T + 1)
    const double ratio = 4.0 / static_cast<double>(t_split + 1);
    const long k_max = series_length(work.bits, ratio);
    const RSeries c = pair_term_series(k_max + 1);
    std::map<long, std::vector<BigFloat>> zeta_at;
    auto zeta = [&](long k, long a) -> const BigFloat& {
        auto it = zeta_at.find(a);
        if (it == zeta_at.end()) it = zeta_at.emplace(a, hurwitz_zeta_range(2, k_max, BigFloat(a, work), work)).first;
        return it->second[static_cast<std::size_t>(k - 2)];
    };
    BigFloat tail(work);
    for (long k = 2; k <= k_max; ++k) {
        BigFloat r_k = zeta(k, 1) * zeta(k, t_split + 1);
        for (long i = 1; i <= t_split; ++i) r_k += pow(BigFloat(i, work), -k) * zeta(k, t_split / i + 1);
        tail += BigFloat(c[static_cast<std::size_t>(k)], work) * r_k;
    }
    // sum_{t > T} d(t) t^-k <= zeta(2)^2 (T+1)^-(k-2) and |c_k| <= A 4^k.
    const BigFloat r(ratio, work);
    const BigFloat zeta2 = zeta(2, 1);
    const BigFloat bound = BigFloat(2L, work) * growth_constant(c, work) * zeta2 * zeta2 *
                           pow(BigFloat(4L, work), k_max + 1) * pow(BigFloat(t_split + 1, work), -(k_max - 1)) /
                           (BigFloat(1L, work) - r);
    TraceReport out;
    out.power = 2;
    out.method = "divisor series";
    out.terms = t_split;
    out.value = (head + tail).rounded(p);
    out.tail_bound = (bound + ulp_scale(p.bits - 8, work)).rounded(p);
    return out;
}

std::vector<TraceReport> trace_power(int k, long terms, Precision p, double slack) {
    std::vector<TraceReport> reports;
    if (k == 1) {
        reports.push_back(trace1_fixed_points(terms, p));
        reports.push_back(trace1_zeta_series(p.bits + 16, p));
    } else if (k == 2) {
        reports.push_back(trace2_divisor_series(terms, p));
        reports.push_back(trace2_pair_sum(4 * terms, p));
    } else {
        throw DomainError("trace_power: only powers 1 and 2 are supported");
    }
    const BigFloat diff = abs(reports[0].value - reports[1].value);
    const BigFloat allowed = reports[0].tail_bound + reports[1].tail_bound + BigFloat(slack, p);
    if (diff > allowed)
        throw ConsistencyError("Tr L^" + std::to_string(k) + ": " + reports[0].method + " gives " +
                               reports[0].value.to_string(20) + ", " + reports[1].method + " gives " +
                               reports[1].value.to_string(20) + " (difference " + diff.to_string(4) +
                               " exceeds combined bound " + allowed.to_string(4) + ")");
    return reports;
}

std::vector<std::vector<BigFloat>> layer_table(long n_max, long layers, const SpectralOptions& opts) {
    if (n_max < 1) throw DomainError("layer_table: n_max must be positive");
    SpectralOptions o = opts;
    o.v_max = std::max(layers, 1L);
    o.check_divergence = false;
    std::vector<std::vector<BigFloat>> table;
    for (long n = 1; n <= n_max; ++n) {
        LayerState s = compute_layers(n, o);
        s.W.resize(static_cast<std::size_t>(layers + 1), BigFloat(o.precision));
        table.push_back(std::move(s.W));
    }
    return table;
}

namespace {

BigFloat golden_weight(long power, Precision p) { return quad_to_float(golden_pow(power), p); }

IdentityReport finish(long ell, long n_max, BigFloat lhs, BigFloat target) {
    IdentityReport r;
    r.ell = ell;
    r.n_max = n_max;
    r.residual = abs(lhs - target);
    r.lhs = std::move(lhs);
    r.target = std::move(target);
    return r;
}

}  // namespace

IdentityReport column_identity(long ell, long n_max, const SpectralOptions& opts) {
    if (ell < 1) throw DomainError("column_identity: ell must be positive");
    const Precision p = opts.precision;
    const auto table = layer_table(n_max, ell - 1, opts);
    BigFloat lhs(p);
    for (long n = 1; n <= n_max; ++n) {
        BigFloat term = golden_weight(-2 * n, p) * table[static_cast<std::size_t>(n - 1)][static_cast<std::size_t>(ell - 1)];
        if (n % 2 == 0) term = -term;
        lhs += term;
    }
    return finish(ell, n_max, lhs, quad_to_float(single_term(ell), p));
}

IdentityReport pair_identity(long ell, long n_max, const SpectralOptions& opts) {
    if (ell < 2) throw DomainError("pair_identity: ell must be at least 2");
    const Precision p = opts.precision;
    const auto table = layer_table(n_max, ell - 2, opts);
    BigFloat lhs(p);
    BigFloat target(p);
    for (long i = 1; i < ell; ++i) {
        const long j = ell - i;
        target += quad_to_float(pair_term(i, j), p);
        for (long n = 1; n <= n_max; ++n) {
            const auto& w = table[static_cast<std::size_t>(n - 1)];
            lhs += golden_weight(-4 * n, p) * w[static_cast<std::size_t>(i - 1)] * w[static_cast<std::size_t>(j - 1)];
        }
    }
    return finish(ell, n_max, lhs, target);
}

IdentityReport omega_trace_identity(int power, long ell, long n_max, const SpectralOptions& opts) {
    if (power == 1) return column_identity(ell, n_max, opts);
    if (power == 2) return pair_identity(ell, n_max, opts);
    throw DomainError("omega_trace_identity: power must be 1 or 2");
}

DecompositionMatrix decomposition_matrix(long n_max, long ell_max, const SpectralOptions& opts) {
    if (ell_max < 1) throw DomainError("decomposition_matrix: ell_max must be positive");
    const Precision p = opts.precision;
    const auto table = layer_table(n_max, ell_max - 1, opts);
    DecompositionMatrix m;
    m.n_max = n_max;
    m.ell_max = ell_max;
    m.column_sums.assign(static_cast<std::size_t>(ell_max), BigFloat(p));
    for (long n = 1; n <= n_max; ++n) {
        BigFloat weight = golden_weight(-2 * n, p);
        if (n % 2 == 0) weight = -weight;
        std::vector<BigFloat> row;
        BigFloat row_sum(p);
        for (long l = 1; l <= ell_max; ++l) {
            BigFloat e = weight * table[static_cast<std::size_t>(n - 1)][static_cast<std::size_t>(l - 1)];
            row_sum += e;
            m.column_sums[static_cast<std::size_t>(l - 1)] += e;
            row.push_back(std::move(e));
        }
        m.entries.push_back(std::move(row));
        m.row_sums.push_back(std::move(row_sum));
    }
    for (long l = 1; l <= ell_max; ++l) m.column_targets.push_back(quad_to_float(single_term(l), p));
    return m;
}

void write_decomposition_csv(std::ostream& out, const DecompositionMatrix& m) {
    out << "n";
    for (long l = 1; l <= m.ell_max; ++l) out << ",l" << l;
    out << ",row_sum\n";
    for (long n = 1; n <= m.n_max; ++n) {
        out << n;
        for (const auto& e : m.entries[static_cast<std::size_t>(n - 1)]) out << ',' << e.to_string();
        out << ',' << m.row_sums[static_cast<std::size_t>(n - 1)].to_string() << '\n';
    }
    out << "column_sum";
    for (const auto& c : m.column_sums) out << ',' << c.to_string();
    out << ",\n";
    out << "column_target";
    for (const auto& c : m.column_targets) out << ',' << c.to_string();
    out << ",\n";
}

}  // namespace gkw
