#include "gkw/analysis.hpp"
#include "gkw/errors.hpp"
#include "gkw/quadratic.hpp"

#include <Eigen/Dense>

#include <cmath>

namespace gkw {

Estimate asympt_c(long n, const BigFloat& lambda, const BigFloat& lambda_error, double max_error) {
    if (n < 1) throw DomainError("asympt_c: n must be positive");
    const Precision p = lambda.precision();
    const BigFloat scale = quad_to_float(golden_pow(2 * n), p);
    const BigFloat root_n = sqrt(BigFloat(n, p));
    BigFloat signed_lambda = n % 2 == 1 ? lambda : -lambda;
    Estimate e{(signed_lambda * scale - BigFloat(1L, p)) * root_n, abs(lambda_error) * scale * root_n};
    if (e.error > BigFloat(max_error, p))
        throw PrecisionError("asympt_c: error " + e.error.to_string(3) + " on c(" + std::to_string(n) +
                             ") exceeds " + BigFloat(max_error, Precision(53)).to_string(3));
    return e;
}

std::vector<RatioRow> ratio_test(const std::vector<BigFloat>& lambdas, const std::vector<BigFloat>& errors) {
    if (lambdas.size() < 2) throw DomainError("ratio_test: need at least two eigenvalues");
    if (!errors.empty() && errors.size() != lambdas.size()) throw DomainError("ratio_test: error list size mismatch");
    std::vector<RatioRow> rows;
    for (std::size_t i = 0; i + 1 < lambdas.size(); ++i) {
        const BigFloat& a = lambdas[i];
        const BigFloat& b = lambdas[i + 1];
        if (b.is_zero()) throw DomainError("ratio_test: zero eigenvalue");
        const Precision p = a.precision();
        BigFloat ratio = a / b;
        BigFloat err(p);
        if (!errors.empty()) err = abs(ratio) * (abs(errors[i]) / abs(a) + abs(errors[i + 1]) / abs(b));
        rows.push_back(RatioRow{static_cast<long>(i) + 1, std::move(ratio), std::move(err)});
    }
    return rows;
}

std::vector<AsymptoticsRow> asymptotics_table(const std::vector<long>& ns, const std::vector<BigFloat>& lambdas,
                                              const std::vector<BigFloat>& errors) {
    if (ns.size() != lambdas.size() || ns.size() != errors.size()) throw DomainError("asymptotics_table: size mismatch");
    std::vector<AsymptoticsRow> rows;
    for (std::size_t i = 0; i < ns.size(); ++i) {
        const Estimate c = asympt_c(ns[i], lambdas[i], errors[i], INFINITY);
        AsymptoticsRow row{ns[i], lambdas[i], errors[i], c.value, c.error, BigFloat(lambdas[i].precision()), false};
        if (i + 1 < ns.size() && ns[i + 1] == ns[i] + 1) {
            row.ratio_to_next = lambdas[i] / lambdas[i + 1];
            row.has_ratio = true;
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

void write_asymptotics_csv(std::ostream& out, const std::vector<AsymptoticsRow>& rows) {
    out << "n,lambda,c_n,ratio,err_lambda\n";
    for (const auto& r : rows) {
        out << r.n << ',' << r.lambda.to_string() << ',' << r.c_n.to_string() << ',';
        if (r.has_ratio) out << r.ratio_to_next.to_string();
        out << ',' << r.err_lambda.to_string(6) << '\n';
    }
}

FitResult fit_d(const std::vector<long>& ns, const std::vector<double>& c, long p_max) {
    if (p_max < 0) throw DomainError("fit_d: p_max must be non-negative");
    if (ns.size() != c.size()) throw DomainError("fit_d: size mismatch");
    if (static_cast<long>(ns.size()) < p_max + 2) throw DomainError("fit_d: need at least p_max + 2 rows");
    const auto rows = static_cast<Eigen::Index>(ns.size());
    const auto cols = static_cast<Eigen::Index>(p_max + 1);
    Eigen::MatrixXd a(rows, cols);
    Eigen::VectorXd y(rows);
    for (Eigen::Index i = 0; i < rows; ++i) {
        const double n = static_cast<double>(ns[static_cast<std::size_t>(i)]);
        for (Eigen::Index k = 0; k < cols; ++k) a(i, k) = std::pow(n, -0.5 * static_cast<double>(k));
        y(i) = c[static_cast<std::size_t>(i)];
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::VectorXd d = svd.solve(y);
    const Eigen::VectorXd res = y - a * d;

    FitResult out;
    out.d.assign(d.data(), d.data() + d.size());
    out.residuals.assign(res.data(), res.data() + res.size());
    out.residual_norm = res.norm();
    const auto& sv = svd.singularValues();
    out.condition_number = sv(sv.size() - 1) > 0 ? sv(0) / sv(sv.size() - 1) : INFINITY;
    if (p_max > 3) {
        out.ill_conditioned = true;
        out.warning = "fit beyond p_max = 3 is ill-conditioned (condition number " +
                      std::to_string(out.condition_number) + "); coefficients are not meaningful";
    }
    return out;
}

FitResult fit_d(const std::vector<AsymptoticsRow>& rows, long p_max) {
    std::vector<long> ns;
    std::vector<double> c;
    for (const auto& r : rows) {
        ns.push_back(r.n);
        c.push_back(r.c_n.to_double());
    }
    return fit_d(ns, c, p_max);
}

}  // namespace gkw
