#include "gkw/errors.hpp"
#include "gkw/spectral.hpp"
#include "gkw/traces.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>
#include <sstream>

using namespace gkw;

namespace {

const Precision kP(128);

QuadraticNumber rat(const Rational& r, long d) { return QuadraticNumber::rational(r, d); }

}  // namespace

TEST_CASE("single fixed points") {
    CHECK(xi_single(1).value == golden_pow(-1));
    CHECK(xi_single(2).value == QuadraticNumber(Rational(-1), Rational(1), 2));
    for (long ell = 1; ell <= 30; ++ell) {
        const QuadraticNumber x = xi_single(ell).value;
        const long d = x.d();
        REQUIRE((x * x + x * Rational(ell) - rat(1, d)).is_zero());
        REQUIRE(x.sign() > 0);
        REQUIRE(quad_compare(x, rat(1, d)) == std::strong_ordering::less);
        // 1/(xi^-2 + 1) = xi^2 / (1 + xi^2)
        const QuadraticNumber lhs = (x.pow(-2) + rat(1, d)).inverse();
        REQUIRE(lhs == x * x / (rat(1, d) + x * x));
        REQUIRE(single_term(ell) == lhs);
    }
    CHECK(single_term(1) == QuadraticNumber(Rational(1, 2), Rational(-1, 10), 5));
}

TEST_CASE("pair fixed points") {
    CHECK(xi_pair(1, 2) == QuadraticNumber(Rational(-1), Rational(1), 3));
    CHECK(xi_pair(2, 1) == QuadraticNumber(Rational(-1, 2), Rational(1, 2), 3));
    CHECK(xi_pair_product(1, 2).value == QuadraticNumber(Rational(2), Rational(-1), 3));
    CHECK(pair_term(1, 2) == (QuadraticNumber(Rational(6), Rational(4), 3)).inverse());
    CHECK(std::abs(quad_to_float(pair_term(1, 2), kP).to_double() - 0.0773503) < 1e-7);
    for (long i = 1; i <= 8; ++i)
        for (long j = 1; j <= 8; ++j) {
            // [0; i, j, i, j, ...] solves i x^2 + i j x - j = 0
            const QuadraticNumber x = xi_pair(i, j);
            REQUIRE((x * x * Rational(i) + x * Rational(i * j) - rat(j, x.d())).is_zero());
            REQUIRE(xi_pair_product(i, j).value == xi_pair_product(j, i).value);
            const QuadraticNumber prod = xi_pair_product(i, j).value;
            REQUIRE(prod.sign() > 0);
            REQUIRE(quad_compare(prod, rat(1, prod.d())) == std::strong_ordering::less);
        }
    for (long i = 1; i <= 6; ++i) {
        const QuadraticNumber xi = xi_single(i).value;
        CHECK(xi_pair(i, i) == xi);
        CHECK(xi_pair_product(i, i).value == xi * xi);
    }
}

TEST_CASE("trace of L: two methods agree") {
    const auto reports = trace_power(1, 400, kP, 1e-10);
    REQUIRE(reports.size() == 2);
    CHECK(reports[0].method != reports[1].method);
    CHECK(abs(reports[0].value - reports[1].value) < BigFloat(1e-10, kP));
    CHECK(std::abs(reports[0].value.to_double() - 0.7711255237) < 1e-10);
    // brute force: sum over the first 10^6 single fixed points plus an
    // integral tail sum_{l > L} 1/l^2 ~ 1/L
    double brute = 0.0;
    const long L = 1000000;
    for (long ell = L; ell >= 1; --ell) {
        const double l = static_cast<double>(ell);
        const double xi = (std::sqrt(l * l + 4.0) - l) / 2.0;
        brute += xi * xi / (1.0 + xi * xi);
    }
    brute += 1.0 / static_cast<double>(L);
    CHECK(std::abs(brute - reports[0].value.to_double()) < 1e-10);
}

TEST_CASE("trace of L squared") {
    const auto reports = trace_power(2, 200, kP);
    REQUIRE(reports.size() == 2);
    const BigFloat gap = abs(reports[0].value - reports[1].value);
    CHECK(gap <= reports[0].tail_bound + reports[1].tail_bound);
    CHECK(std::abs(reports[0].value.to_double() - 1.1038396536) < 1e-9);
    // the (1,2) and (2,1) terms together
    CHECK(pair_term(1, 2) + pair_term(2, 1) == QuadraticNumber(Rational(6), Rational(4), 3).inverse() * Rational(2));
    CHECK_THROWS_AS(trace_power(3, 10, kP), DomainError);
}

TEST_CASE("first column identity is a geometric series") {
    const auto r = column_identity(1, 60, SpectralOptions{});
    CHECK(r.residual < BigFloat(1e-20, kP));
    CHECK(abs(r.target - BigFloat(0.27639320225002103, kP)) < BigFloat(1e-15, kP));
}

TEST_CASE("second column identity: partial sums bracket the target") {
    const SpectralOptions o;
    const auto two = column_identity(2, 2, o);
    const auto four = column_identity(2, 4, o);
    CHECK(std::abs(two.lhs.to_double() - 0.13581) < 5e-6);
    CHECK(std::abs(four.lhs.to_double() - 0.14529) < 5e-6);
    CHECK(two.lhs < two.target);
    CHECK(four.lhs < four.target);
    const auto odd = column_identity(2, 3, o);
    CHECK(odd.lhs > odd.target);
    const auto full = column_identity(2, 40, o);
    CHECK(full.residual < BigFloat(1e-6, kP));
    CHECK(std::abs(full.target.to_double() - 0.1464466) < 1e-7);
}

TEST_CASE("column residuals shrink with n_max") {
    const SpectralOptions o;
    for (long ell : {2L, 3L}) {
        BigFloat prev(1L, kP);
        for (long n_max : {10L, 20L, 30L, 40L}) {
            const auto r = column_identity(ell, n_max, o);
            INFO("ell " << ell << " n_max " << n_max << " residual " << r.residual.to_string(4));
            CHECK(r.residual < prev);
            prev = r.residual;
        }
        CHECK(prev < BigFloat(1e-6, kP));
    }
    CHECK(std::abs(column_identity(3, 5, o).target.to_double() - 0.0839748528) < 1e-9);
}

TEST_CASE("pair identities") {
    const SpectralOptions o;
    const auto two = pair_identity(2, 60, o);
    const double phi4 = std::pow((1.0 + std::sqrt(5.0)) / 2.0, 4);
    CHECK(std::abs(two.target.to_double() - 1.0 / (phi4 - 1.0)) < 1e-15);
    CHECK(two.residual < BigFloat(1e-20, kP));
    const auto three = pair_identity(3, 40, o);
    CHECK(three.residual < BigFloat(1e-6, kP));
    CHECK(std::abs(three.target.to_double() - 0.1547005) < 1e-7);
    CHECK_THROWS_AS(pair_identity(1, 10, o), DomainError);
}

TEST_CASE("omega trace identities reduce to the column and pair sums") {
    const SpectralOptions o;
    CHECK(omega_trace_identity(1, 1, 20, o).residual == column_identity(1, 20, o).residual);
    CHECK(omega_trace_identity(1, 2, 20, o).residual == column_identity(2, 20, o).residual);
    CHECK(omega_trace_identity(2, 3, 20, o).residual == pair_identity(3, 20, o).residual);
    CHECK_THROWS_AS(omega_trace_identity(3, 1, 5, o), DomainError);
}

TEST_CASE("decomposition matrix marginals") {
    const SpectralOptions o;
    const auto m = decomposition_matrix(12, 4, o);
    REQUIRE(m.entries.size() == 12);
    for (long l = 1; l <= 4; ++l) {
        const auto c = column_identity(l, 12, o);
        CHECK(abs(m.column_sums[l - 1] - c.lhs) < BigFloat(1e-35, kP));
        CHECK(m.column_targets[l - 1] == c.target);
    }
    // row n is the first four layer contributions of eigenvalue n
    for (long n = 1; n <= 12; n += 5) {
        SpectralOptions e = o;
        e.v_max = 3;
        e.check_divergence = false;
        const auto r = eigenvalue(n, e);
        BigFloat expect(kP);
        for (const auto& c : r.contributions) expect += c;
        if (n % 2 == 0) expect = -expect;
        CHECK(abs(m.row_sums[n - 1] - expect) < BigFloat(1e-35, kP));
    }
    std::ostringstream out;
    write_decomposition_csv(out, m);
    const std::string s = out.str();
    CHECK(s.rfind("n,l1,l2,l3,l4,row_sum\n", 0) == 0);
    CHECK(s.find("\ncolumn_sum,") != std::string::npos);
    CHECK(s.find("\ncolumn_target,") != std::string::npos);
}
