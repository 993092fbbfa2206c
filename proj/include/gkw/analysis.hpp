#pragma once

#include "gkw/bigfloat.hpp"

#include <ostream>
#include <string>
#include <vector>

namespace gkw {

struct Estimate {
    BigFloat value;
    BigFloat error;
};

// c(n) = ((-1)^(n+1) lambda phi^(2n) - 1) sqrt n, with the error of lambda
// propagated. Throws PrecisionError when the propagated error exceeds
// `max_error`.
Estimate asympt_c(long n, const BigFloat& lambda, const BigFloat& lambda_error, double max_error = 0.05);

struct RatioRow {
    long n;
    BigFloat ratio;  // lambda_n / lambda_(n+1)
    BigFloat error;
};

// Ratios of consecutive entries; `errors` may be empty (treated as zero).
std::vector<RatioRow> ratio_test(const std::vector<BigFloat>& lambdas, const std::vector<BigFloat>& errors = {});

struct AsymptoticsRow {
    long n;
    BigFloat lambda;
    BigFloat err_lambda;
    BigFloat c_n;
    BigFloat err_c;
    BigFloat ratio_to_next;  // meaningful only when has_ratio
    bool has_ratio = false;
};

// Rows for consecutive or sparse n; ratios are filled only where n+1 is present.
std::vector<AsymptoticsRow> asymptotics_table(const std::vector<long>& ns, const std::vector<BigFloat>& lambdas,
                                              const std::vector<BigFloat>& errors);

void write_asymptotics_csv(std::ostream& out, const std::vector<AsymptoticsRow>& rows);

struct FitResult {
    std::vector<double> d;          // coefficients of n^(-p/2), p = 0..p_max
    std::vector<double> residuals;  // c(n) - fit at each row
    double residual_norm = 0.0;
    double condition_number = 1.0;
    bool ill_conditioned = false;
    std::string warning;
};

// Least squares c(n) ~ sum_{p <= p_max} d(p) n^(-p/2). Purely empirical.
FitResult fit_d(const std::vector<long>& ns, const std::vector<double>& c, long p_max);
FitResult fit_d(const std::vector<AsymptoticsRow>& rows, long p_max);

}  // namespace gkw
