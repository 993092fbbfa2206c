#include "gkw/kernel.hpp"
#include "gkw/errors.hpp"

#include <algorithm>

namespace gkw {

QuadraticNumber k_coeff(long j, long ell) {
    if (j < 1 || ell < 1) throw DomainError("k_coeff: indices must be positive");
    Integer sum = 0;
    Integer five_pow = 5;
    for (long a = 0; a <= std::min(ell - 1, j - 1); ++a) {
        sum += binomial(ell - 1, a) * binomial(j, a + 1) * five_pow;
        five_pow *= 5;
    }
    Integer two_pow;
    mpz_ui_pow_ui(two_pow.get_mpz_t(), 2, static_cast<unsigned long>(ell + j));
    return golden_pow(-(ell + j)) * Rational(sum, two_pow);
}

Rational jacobi_recurrence(long m, long alpha, long beta, const Rational& x) {
    if (m < 0) throw DomainError("jacobi: degree must be non-negative");
    if (alpha <= -1 || beta <= -1) throw DomainError("jacobi_recurrence: requires alpha, beta > -1");
    Rational prev(1);
    if (m == 0) return prev;
    Rational cur = Rational(alpha - beta, 2) + Rational(alpha + beta + 2, 2) * x;
    for (long k = 2; k <= m; ++k) {
        // 2k(k+a+b)(2k+a+b-2) P_k = (2k+a+b-1)[(2k+a+b)(2k+a+b-2) x + a^2 - b^2] P_{k-1}
        //                          - 2(k+a-1)(k+b-1)(2k+a+b) P_{k-2}
        const long s = 2 * k + alpha + beta;
        const Rational c0(2 * k * (k + alpha + beta) * (s - 2));
        const Rational c1 = Rational(s - 1) * (Rational(s * (s - 2)) * x + Rational(alpha * alpha - beta * beta));
        const Rational c2(2 * (k + alpha - 1) * (k + beta - 1) * s);
        Rational next = (c1 * cur - c2 * prev) / c0;
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

Rational jacobi_contour_sum(long m, long alpha, long beta, const Rational& x) {
    if (m < 0) throw DomainError("jacobi: degree must be non-negative");
    // Residue at w = x of (w-1)^(m+a) (w+1)^(m+b) / (w-x)^(m+1), divided by
    // 2^m (x-1)^a (x+1)^b, expanded with generalized binomials.
    if (m + alpha < 0 && x == Rational(1)) throw DomainError("jacobi_contour_sum: pole at x = 1");
    if (m + beta < 0 && x == Rational(-1)) throw DomainError("jacobi_contour_sum: pole at x = -1");
    const Rational xm = x - Rational(1);
    const Rational xp = x + Rational(1);
    Rational sum(0);
    for (long k = 0; k <= m; ++k) {
        const Integer c = binomial_signed(m + alpha, k) * binomial_signed(m + beta, m - k);
        if (c == 0) continue;
        sum += Rational(c) * xm.pow(m - k) * xp.pow(k);
    }
    Integer two_pow;
    mpz_ui_pow_ui(two_pow.get_mpz_t(), 2, static_cast<unsigned long>(m));
    return sum / Rational(two_pow);
}

Rational jacobi_eval(long m, long alpha, long beta, const Rational& x) {
    if (alpha > -1 && beta > -1) return jacobi_recurrence(m, alpha, beta, x);
    return jacobi_contour_sum(m, alpha, beta, x);
}

QuadraticNumber KernelTable::exact_mass() const {
    QuadraticNumber s(5);
    for (const auto& v : values) s += v;
    return s;
}

long default_window_cap(long ell) { return 8 * ell + 200; }

KernelTable k_window(long ell, const BigFloat& mass_target, std::optional<long> j_cap) {
    if (ell < 1) throw DomainError("k_window: ell must be positive");
    const BigFloat one(1L, mass_target.precision());
    if (mass_target.sign() <= 0 || !(mass_target < one)) throw DomainError("k_window: mass target must lie in (0, 1)");
    const long cap = j_cap.value_or(default_window_cap(ell));
    if (cap < ell) throw ConfigError("k_window: cap below the diagonal index");
    const Precision p = mass_target.precision();
    const Precision work = p.plus(64);

    long lo = ell;
    long hi = ell;
    std::vector<QuadraticNumber> values{k_coeff(ell, ell)};
    QuadraticNumber mass = values.front();
    for (;;) {
        const BigFloat captured = quad_to_float(mass, work);
        if (captured >= mass_target) {
            BigFloat tail = one.rounded(work) - captured;
            tail += ulp_scale(p.bits, work);  // round the bound up
            return KernelTable{ell, lo, hi, std::move(values), captured.rounded(p), tail.rounded(p)};
        }
        if (hi + 1 > cap)
            throw TruncationError("k_window: cap " + std::to_string(cap) + " reached for ell=" + std::to_string(ell) +
                                      " with mass " + captured.to_string(25),
                                  captured.to_double());
        ++hi;
        values.push_back(k_coeff(hi, ell));
        mass += values.back();
        if (lo > 1) {
            --lo;
            QuadraticNumber v = k_coeff(lo, ell);
            mass += v;
            values.insert(values.begin(), std::move(v));
        }
    }
}

std::shared_ptr<const KernelTable> KernelCache::get(long ell, const BigFloat& mass_target, std::optional<long> j_cap) {
    const long cap = j_cap.value_or(default_window_cap(ell));
    Key key{ell, mass_target.to_string() + "@" + std::to_string(mass_target.precision().bits), cap};
    {
        std::lock_guard lock(mutex_);
        if (auto it = rows_.find(key); it != rows_.end()) return it->second;
    }
    auto table = std::make_shared<const KernelTable>(k_window(ell, mass_target, cap));
    std::lock_guard lock(mutex_);
    return rows_.emplace(std::move(key), std::move(table)).first->second;
}

std::size_t KernelCache::size() const {
    std::lock_guard lock(mutex_);
    return rows_.size();
}

std::shared_ptr<const FloatKernel> FloatKernel::build(long size, Precision p) {
    if (size < 1) throw ConfigError("FloatKernel: size must be positive");
    std::shared_ptr<FloatKernel> k(new FloatKernel(size, p));
    const Precision work = p.plus(8);
    const BigFloat cutoff = ulp_scale(p.bits + 24, p);

    // inv[m] = (2 phi)^-m
    const BigFloat two_phi = BigFloat(1L, work) + sqrt(BigFloat(5L, work));
    std::vector<BigFloat> inv;
    inv.reserve(static_cast<std::size_t>(2 * size + 1));
    for (long m = 0; m <= 2 * size; ++m) inv.push_back(pow(two_phi, -m));

    // e[j] holds e(j, l) for the current l; starts at l = 0.
    std::vector<Integer> e(static_cast<std::size_t>(size + 1), Integer(0));
    e[0] = 1;
    std::vector<Integer> next(e.size());
    k->cols_.resize(static_cast<std::size_t>(size));
    for (long ell = 1; ell <= size; ++ell) {
        next[0] = 1;
        for (std::size_t j = 1; j < e.size(); ++j) next[j] = next[j - 1] + e[j] + 4 * e[j - 1];
        std::swap(e, next);

        Column& col = k->cols_[static_cast<std::size_t>(ell - 1)];
        std::vector<BigFloat> values;
        long first = 0;
        long last = 0;
        for (long j = 1; j <= size; ++j) {
            BigFloat v(e[static_cast<std::size_t>(j)], work);
            v *= j;
            v /= ell;
            v *= inv[static_cast<std::size_t>(j + ell)];
            BigFloat r = v.rounded(p);
            if (r >= cutoff) {
                if (first == 0) first = j;
                last = j;
            }
            values.push_back(std::move(r));
        }
        if (first == 0) first = last = ell;
        col.lo = first;
        col.values.assign(std::make_move_iterator(values.begin() + (first - 1)),
                          std::make_move_iterator(values.begin() + last));
    }
    return k;
}

BigFloat FloatKernel::at(long j, long i) const {
    if (i < 1 || i > size_ || j < 1 || j > size_) throw DomainError("FloatKernel: index out of range");
    const Column& c = cols_[static_cast<std::size_t>(i - 1)];
    if (j < c.lo || j >= c.lo + static_cast<long>(c.values.size())) return BigFloat(prec_);
    return c.values[static_cast<std::size_t>(j - c.lo)];
}

std::vector<BigFloat> FloatKernel::apply(const std::vector<BigFloat>& in) const {
    const long m = static_cast<long>(in.size());
    if (m > size_) throw DomainError("FloatKernel::apply: vector longer than the kernel block");
    std::vector<BigFloat> out(in.size(), BigFloat(prec_));
    for (long i = 1; i <= m; ++i) {
        const BigFloat& w = in[static_cast<std::size_t>(i - 1)];
        if (w.is_zero()) continue;
        const Column& c = cols_[static_cast<std::size_t>(i - 1)];
        const long stop = std::min(m, c.lo + static_cast<long>(c.values.size()) - 1);
        for (long j = c.lo; j <= stop; ++j)
            out[static_cast<std::size_t>(j - 1)].fma_accumulate(c.values[static_cast<std::size_t>(j - c.lo)], w);
    }
    return out;
}

std::shared_ptr<const FloatKernel> shared_float_kernel(long size, Precision p) {
    static std::mutex mutex;
    static std::map<long, std::shared_ptr<const FloatKernel>> by_precision;
    {
        std::lock_guard lock(mutex);
        auto it = by_precision.find(p.bits);
        if (it != by_precision.end() && it->second->size() >= size) return it->second;
    }
    // Round up so that nearby requests share one block.
    auto k = FloatKernel::build((size + 127) / 128 * 128, p);
    std::lock_guard lock(mutex);
    auto& slot = by_precision[p.bits];
    if (!slot || slot->size() < k->size()) slot = k;
    return slot->size() >= size ? slot : k;
}

void write_kernel_row_csv(std::ostream& out, const KernelTable& table, Precision p) {
    out << "j,K_a,K_b,K_float\n";
    for (long j = table.j_lo; j <= table.j_hi; ++j) {
        const QuadraticNumber& k = table.at(j);
        out << j << ',' << k.a().str() << ',' << k.b().str() << ',' << quad_to_float(k, p).to_string() << '\n';
    }
}

}  // namespace gkw
