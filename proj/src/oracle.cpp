#include "gkw/oracle.hpp"
#include "gkw/errors.hpp"

#include <algorithm>
#include <cmath>

namespace gkw {

std::vector<Rational> bernoulli_numbers(long n) {
    std::vector<Rational> b{Rational(1)};
    for (long m = 1; m <= n; ++m) {
        Rational s(0);
        for (long k = 0; k < m; ++k) s += Rational(binomial(m + 1, k)) * b[static_cast<std::size_t>(k)];
        b.push_back(-s / Rational(m + 1));
    }
    return b;
}

namespace {

constexpr long kBernoulliTerms = 10;  // B_2 .. B_20

const std::vector<Rational>& bernoulli_table() {
    static const std::vector<Rational> table = bernoulli_numbers(2 * kBernoulliTerms + 2);
    return table;
}

// (s)_k = s (s+1) ... (s+k-1)
Integer rising(long s, long k) {
    Integer r = 1;
    for (long i = 0; i < k; ++i) r *= s + i;
    return r;
}

// Smallest x at which the first omitted Euler-Maclaurin term is below
// 2^-(p+4) a^-s, a lower bound for zeta(s, a).
double em_threshold(long s, double a, Precision p) {
    const long j = kBernoulliTerms + 1;
    const Rational coeff = bernoulli_table()[static_cast<std::size_t>(2 * j)].abs() * Rational(rising(s, 2 * j - 1)) /
                           Rational(rising(1, 2 * j));
    const double log2_bound = std::log2(coeff.to_double()) + static_cast<double>(p.bits) + 4.0 +
                              static_cast<double>(s) * std::log2(a);
    return std::exp2(log2_bound / static_cast<double>(s + 2 * j - 1));
}

}  // namespace

std::vector<BigFloat> hurwitz_zeta_range(long s_min, long s_max, const BigFloat& a, Precision p) {
    if (s_min < 2 || s_max < s_min) throw DomainError("hurwitz_zeta: need 2 <= s_min <= s_max");
    if (a.sign() <= 0) throw DomainError("hurwitz_zeta: a must be positive");
    const double a_d = a.to_double();
    double x_min = 0.0;
    for (long s = s_min; s <= s_max; ++s) x_min = std::max(x_min, em_threshold(s, a_d, p));
    const long m = a_d >= x_min ? 0 : static_cast<long>(std::ceil(x_min - a_d));
    const Precision work = p.plus(16 + static_cast<long>(std::log2(static_cast<double>(m) + 1.0)));
    const auto count = static_cast<std::size_t>(s_max - s_min + 1);

    const BigFloat aw = a.rounded(work);
    std::vector<BigFloat> sums(count, BigFloat(work));
    for (long k = 0; k < m; ++k) {
        const BigFloat inv = BigFloat(1L, work) / (aw + BigFloat(k, work));
        BigFloat term = pow(inv, s_min);
        for (std::size_t i = 0; i < count; ++i) {
            sums[i] += term;
            term *= inv;
        }
    }

    const BigFloat x = aw + BigFloat(m, work);
    const BigFloat inv_x2 = BigFloat(1L, work) / (x * x);
    std::vector<BigFloat> out;
    for (long s = s_min; s <= s_max; ++s) {
        BigFloat sum = sums[static_cast<std::size_t>(s - s_min)];
        const BigFloat x_pow = pow(x, -s);
        sum += x_pow * x / BigFloat(s - 1, work);
        sum += x_pow / 2L;
        // term_j = B_2j / (2j)! * (s)_(2j-1) * x^(-s-2j+1)
        BigFloat xp = x_pow / x;
        for (long j = 1; j <= kBernoulliTerms; ++j) {
            const Rational c = bernoulli_table()[static_cast<std::size_t>(2 * j)] * Rational(rising(s, 2 * j - 1)) /
                               Rational(rising(1, 2 * j));
            sum += BigFloat(c, work) * xp;
            xp *= inv_x2;
        }
        out.push_back(sum.rounded(p));
    }
    return out;
}

BigFloat hurwitz_zeta(long s, const BigFloat& a, Precision p) { return hurwitz_zeta_range(s, s, a, p).front(); }

BigFloat hurwitz_zeta(long s, long a, Precision p) { return hurwitz_zeta(s, BigFloat(a, p.plus(64)), p); }

TruncatedOperator build_matrix(long dim, Precision p, const Rational& center) {
    if (dim < 1) throw DomainError("build_matrix: dimension must be positive");
    if (center.sign() <= 0) throw DomainError("build_matrix: center must be positive");
    const Precision work = p.plus(2 * dim + 64);
    const BigFloat shift(center + Rational(1), work);

    // zeta(s, c+1) for s = 2 .. 2 dim
    std::vector<BigFloat> zeta{BigFloat(work), BigFloat(work)};
    for (auto& v : hurwitz_zeta_range(2, 2 * dim, shift, work)) zeta.push_back(std::move(v));

    std::vector<BigFloat> minus_c_pow;  // (-c)^e
    for (long e = 0; e < dim; ++e) minus_c_pow.push_back(BigFloat((-center).pow(e), work));

    TruncatedOperator op{dim, center, BigMatrix(static_cast<std::size_t>(dim), static_cast<std::size_t>(dim), p)};
    for (long a = 0; a < dim; ++a) {
        for (long k = 0; k < dim; ++k) {
            BigFloat entry(work);
            for (long b = 0; b <= k; ++b) {
                const Integer c = binomial(k, b) * binomial(a + b + 1, a);
                BigFloat term = BigFloat(c, work) * minus_c_pow[static_cast<std::size_t>(k - b)];
                entry.fma_accumulate(term, zeta[static_cast<std::size_t>(a + b + 2)]);
            }
            if (a % 2 == 1) entry = -entry;
            op.m(static_cast<std::size_t>(a), static_cast<std::size_t>(k)) = entry.rounded(p);
        }
    }
    return op;
}

namespace {

void balance(BigMatrix& a) {
    const std::size_t n = a.rows();
    const double radix = 2.0;
    bool done = false;
    while (!done) {
        done = true;
        for (std::size_t i = 0; i < n; ++i) {
            double r = 0.0;
            double c = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                if (j == i) continue;
                c += std::fabs(a(j, i).to_double());
                r += std::fabs(a(i, j).to_double());
            }
            if (c == 0.0 || r == 0.0) continue;
            double g = r / radix;
            long e = 0;
            const double s = c + r;
            while (c < g) {
                ++e;
                c *= radix * radix;
            }
            g = r * radix;
            while (c > g) {
                --e;
                c /= radix * radix;
            }
            if ((c + r) / std::ldexp(1.0, static_cast<int>(e)) < 0.95 * s) {
                done = false;
                for (std::size_t j = 0; j < n; ++j) a(i, j) = ldexp(a(i, j), -e);
                for (std::size_t j = 0; j < n; ++j) a(j, i) = ldexp(a(j, i), e);
            }
        }
    }
}

// Gaussian elimination with pivoting to upper Hessenberg form.
void hessenberg(BigMatrix& a) {
    const std::size_t n = a.rows();
    const Precision p = a.precision();
    for (std::size_t m = 1; m + 1 < n; ++m) {
        BigFloat x(p);
        std::size_t piv = m;
        for (std::size_t j = m; j < n; ++j) {
            if (abs(a(j, m - 1)) > abs(x)) {
                x = a(j, m - 1);
                piv = j;
            }
        }
        if (piv != m) {
            for (std::size_t j = m - 1; j < n; ++j) std::swap(a(piv, j), a(m, j));
            for (std::size_t j = 0; j < n; ++j) std::swap(a(j, piv), a(j, m));
        }
        if (x.is_zero()) continue;
        for (std::size_t i = m + 1; i < n; ++i) {
            BigFloat y = a(i, m - 1);
            if (y.is_zero()) continue;
            y /= x;
            for (std::size_t j = m; j < n; ++j) a(i, j) -= y * a(m, j);
            for (std::size_t j = 0; j < n; ++j) a(j, m) += y * a(j, i);
        }
    }
    for (std::size_t i = 2; i < n; ++i)
        for (std::size_t j = 0; j + 1 < i; ++j) a(i, j) = BigFloat(p);
}

BigFloat with_sign(const BigFloat& magnitude, const BigFloat& sign_of) {
    BigFloat m = abs(magnitude);
    return sign_of.sign() < 0 ? -m : m;
}

}  // namespace

std::vector<EigenPair> real_eigenvalues(BigMatrix a, long max_iterations) {
    if (a.rows() != a.cols()) throw DomainError("real_eigenvalues: matrix must be square");
    const Precision p = a.precision();
    const long n = static_cast<long>(a.rows());
    balance(a);
    hessenberg(a);
    auto A = [&a](long i, long j) -> BigFloat& { return a(static_cast<std::size_t>(i), static_cast<std::size_t>(j)); };

    const BigFloat eps = ulp_scale(p.bits - 2, p);
    const BigFloat zero(p);
    std::vector<EigenPair> w(static_cast<std::size_t>(n), EigenPair{BigFloat(p), BigFloat(p)});
    BigFloat anorm(p);
    for (long i = 0; i < n; ++i)
        for (long j = std::max(i - 1, 0L); j < n; ++j) anorm += abs(A(i, j));

    long nn = n - 1;
    BigFloat t(p);
    BigFloat x(p), y(p), z(p), ww(p), v(p), u(p), r(p), s(p), q(p), pp(p);
    while (nn >= 0) {
        long its = 0;
        long l = 0;
        do {
            for (l = nn; l > 0; --l) {
                s = abs(A(l - 1, l - 1)) + abs(A(l, l));
                if (s.is_zero()) s = anorm;
                if (abs(A(l, l - 1)) <= eps * s) {
                    A(l, l - 1) = zero;
                    break;
                }
            }
            x = A(nn, nn);
            if (l == nn) {
                w[static_cast<std::size_t>(nn)] = EigenPair{x + t, BigFloat(p)};
                --nn;
            } else {
                y = A(nn - 1, nn - 1);
                ww = A(nn, nn - 1) * A(nn - 1, nn);
                if (l == nn - 1) {
                    pp = (y - x) / 2L;
                    q = pp * pp + ww;
                    z = sqrt(abs(q));
                    x += t;
                    if (q.sign() >= 0) {
                        z = pp + with_sign(z, pp);
                        w[static_cast<std::size_t>(nn - 1)] = EigenPair{x + z, BigFloat(p)};
                        w[static_cast<std::size_t>(nn)] = EigenPair{x + z, BigFloat(p)};
                        if (!z.is_zero()) w[static_cast<std::size_t>(nn)].re = x - ww / z;
                    } else {
                        w[static_cast<std::size_t>(nn)] = EigenPair{x + pp, -z};
                        w[static_cast<std::size_t>(nn - 1)] = EigenPair{x + pp, z};
                    }
                    nn -= 2;
                } else {
                    if (its == max_iterations)
                        throw ConvergenceError("QR iteration did not converge for eigenvalue " + std::to_string(nn) +
                                               " after " + std::to_string(its) + " iterations (subdiagonal " +
                                               abs(A(nn, nn - 1)).to_string(6) + ")");
                    if (its > 0 && its % 10 == 0) {
                        // Exceptional shift.
                        t += x;
                        for (long i = 0; i <= nn; ++i) A(i, i) -= x;
                        s = abs(A(nn, nn - 1)) + abs(A(nn - 1, nn - 2));
                        x = BigFloat(0.75, p) * s;
                        y = x;
                        ww = BigFloat(-0.4375, p) * s * s;
                    }
                    ++its;
                    long m = nn - 2;
                    for (; m >= l; --m) {
                        z = A(m, m);
                        r = x - z;
                        s = y - z;
                        pp = (r * s - ww) / A(m + 1, m) + A(m, m + 1);
                        q = A(m + 1, m + 1) - z - r - s;
                        r = A(m + 2, m + 1);
                        s = abs(pp) + abs(q) + abs(r);
                        pp /= s;
                        q /= s;
                        r /= s;
                        if (m == l) break;
                        u = abs(A(m, m - 1)) * (abs(q) + abs(r));
                        v = abs(pp) * (abs(A(m - 1, m - 1)) + abs(z) + abs(A(m + 1, m + 1)));
                        if (u <= eps * v) break;
                    }
                    for (long i = m; i < nn - 1; ++i) {
                        A(i + 2, i) = zero;
                        if (i != m) A(i + 2, i - 1) = zero;
                    }
                    for (long k = m; k < nn; ++k) {
                        if (k != m) {
                            pp = A(k, k - 1);
                            q = A(k + 1, k - 1);
                            r = zero;
                            if (k + 1 != nn) r = A(k + 2, k - 1);
                            x = abs(pp) + abs(q) + abs(r);
                            if (!x.is_zero()) {
                                pp /= x;
                                q /= x;
                                r /= x;
                            }
                        }
                        s = with_sign(sqrt(pp * pp + q * q + r * r), pp);
                        if (s.is_zero()) continue;
                        if (k == m) {
                            if (l != m) A(k, k - 1) = -A(k, k - 1);
                        } else {
                            A(k, k - 1) = -s * x;
                        }
                        pp += s;
                        x = pp / s;
                        y = q / s;
                        z = r / s;
                        q /= pp;
                        r /= pp;
                        for (long j = k; j <= nn; ++j) {
                            pp = A(k, j) + q * A(k + 1, j);
                            if (k + 1 != nn) {
                                pp += r * A(k + 2, j);
                                A(k + 2, j) -= pp * z;
                            }
                            A(k + 1, j) -= pp * y;
                            A(k, j) -= pp * x;
                        }
                        const long mmin = nn < k + 3 ? nn : k + 3;
                        for (long i = l; i <= mmin; ++i) {
                            pp = x * A(i, k) + y * A(i, k + 1);
                            if (k + 1 != nn) {
                                pp += z * A(i, k + 2);
                                A(i, k + 2) -= pp * r;
                            }
                            A(i, k + 1) -= pp * q;
                            A(i, k) -= pp;
                        }
                    }
                }
            }
        } while (l + 1 < nn);
    }
    return w;
}

std::vector<BigFloat> oracle_eigenvalues(long dim, long count, Precision p, const Rational& center) {
    if (count < 1 || count > dim) throw DomainError("oracle_eigenvalues: need 1 <= count <= dim");
    const TruncatedOperator op = build_matrix(dim, p, center);
    std::vector<EigenPair> all = real_eigenvalues(op.m);
    std::sort(all.begin(), all.end(), [](const EigenPair& a, const EigenPair& b) {
        return a.re * a.re + a.im * a.im > b.re * b.re + b.im * b.im;
    });
    std::vector<BigFloat> out;
    for (long i = 0; i < count; ++i) {
        const EigenPair& e = all[static_cast<std::size_t>(i)];
        if (!e.im.is_zero())
            throw ConvergenceError("oracle: eigenvalue " + std::to_string(i + 1) + " of the N=" + std::to_string(dim) +
                                   " truncation is complex (" + e.re.to_string(10) + " +- " + abs(e.im).to_string(3) +
                                   "i); increase N or lower the count");
        out.push_back(e.re);
    }
    return out;
}

void write_spectrum_csv(std::ostream& out, long dim, const std::vector<BigFloat>& values, bool header) {
    if (header) out << "N,index,eigenvalue\n";
    for (std::size_t i = 0; i < values.size(); ++i) out << dim << ',' << i + 1 << ',' << values[i].to_string() << '\n';
}

}  // namespace gkw
