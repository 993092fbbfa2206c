#include "gkw/linalg.hpp"
#include "gkw/errors.hpp"

#include <utility>

namespace gkw {

BigMatrix::BigMatrix(std::size_t rows, std::size_t cols, Precision p)
    : rows_(rows), cols_(cols), prec_(p), data_(rows * cols, BigFloat(p)) {}

BigFloat BigMatrix::trace() const {
    BigFloat t(prec_);
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
    return t;
}

namespace {

// In-place Householder triangularization. On return the upper triangle of `a`
// holds R and `vs[k]` the reflector for column k (acting on rows k..m-1).
struct Householder {
    std::vector<std::vector<BigFloat>> vs;
    std::vector<BigFloat> betas;
};

Householder triangularize(BigMatrix& a) {
    const std::size_t m = a.rows();
    const std::size_t n = a.cols();
    const Precision p = a.precision();
    if (m < n) throw DomainError("least squares: fewer rows than columns");
    Householder h;
    for (std::size_t k = 0; k < n; ++k) {
        BigFloat norm2(p);
        for (std::size_t i = k; i < m; ++i) norm2.fma_accumulate(a(i, k), a(i, k));
        BigFloat alpha = sqrt(norm2);
        if (alpha.is_zero()) throw DomainError("least squares: rank-deficient design matrix");
        if (a(k, k).sign() > 0) alpha = -alpha;
        std::vector<BigFloat> v;
        v.reserve(m - k);
        for (std::size_t i = k; i < m; ++i) v.push_back(a(i, k));
        v[0] -= alpha;
        BigFloat vnorm2(p);
        for (const auto& x : v) vnorm2.fma_accumulate(x, x);
        BigFloat beta = BigFloat(2L, p) / vnorm2;
        for (std::size_t c = k; c < n; ++c) {
            BigFloat s(p);
            for (std::size_t i = k; i < m; ++i) s.fma_accumulate(v[i - k], a(i, c));
            s *= beta;
            for (std::size_t i = k; i < m; ++i) a(i, c) -= s * v[i - k];
        }
        h.vs.push_back(std::move(v));
        h.betas.push_back(std::move(beta));
    }
    return h;
}

void apply_reflector(const std::vector<BigFloat>& v, const BigFloat& beta, std::size_t k, std::vector<BigFloat>& y) {
    BigFloat s(beta.precision());
    for (std::size_t i = 0; i < v.size(); ++i) s.fma_accumulate(v[i], y[k + i]);
    s *= beta;
    for (std::size_t i = 0; i < v.size(); ++i) y[k + i] -= s * v[i];
}

}  // namespace

std::vector<BigFloat> least_squares(BigMatrix a, std::vector<BigFloat> y) {
    if (y.size() != a.rows()) throw DomainError("least squares: size mismatch");
    const std::size_t n = a.cols();
    const Householder h = triangularize(a);
    for (std::size_t k = 0; k < n; ++k) apply_reflector(h.vs[k], h.betas[k], k, y);
    std::vector<BigFloat> x(n, BigFloat(a.precision()));
    for (std::size_t i = n; i-- > 0;) {
        BigFloat s = y[i];
        for (std::size_t c = i + 1; c < n; ++c) s -= a(i, c) * x[c];
        x[i] = s / a(i, i);
    }
    return x;
}

std::vector<BigFloat> least_squares_first_row(const BigMatrix& design) {
    BigMatrix a = design;
    const std::size_t m = a.rows();
    const std::size_t n = a.cols();
    const Householder h = triangularize(a);
    // Solve R^T u = e_0.
    std::vector<BigFloat> u(m, BigFloat(a.precision()));
    for (std::size_t i = 0; i < n; ++i) {
        BigFloat s(a.precision());
        if (i == 0) s = BigFloat(1L, a.precision());
        for (std::size_t c = 0; c < i; ++c) s -= a(c, i) * u[c];
        u[i] = s / a(i, i);
    }
    // Q u with Q = H_0 H_1 ... H_{n-1}.
    for (std::size_t k = n; k-- > 0;) apply_reflector(h.vs[k], h.betas[k], k, u);
    return u;
}

}  // namespace gkw
