#include "gkw/bigfloat.hpp"
#include "gkw/errors.hpp"
#include "gkw/extrapolation.hpp"
#include "gkw/linalg.hpp"
#include "gkw/quadratic.hpp"
#include "gkw/rational.hpp"

#include <catch_amalgamated.hpp>

#include <random>

using namespace gkw;

namespace {

QuadraticNumber random_quad(std::mt19937_64& rng) {
    std::uniform_int_distribution<long> num(-40, 40);
    std::uniform_int_distribution<long> den(1, 12);
    return QuadraticNumber(Rational(num(rng), den(rng)), Rational(num(rng), den(rng)), 5);
}

// Interval [lo, hi] of width 2^-bits containing sqrt(n / d^2 ...) found by
// bisection on rationals: lo^2 <= target < hi^2.
std::pair<Rational, Rational> bisect_sqrt(const Rational& target, long bits) {
    Rational lo(0), hi(target + Rational(1));
    for (long i = 0; i < bits + 8; ++i) {
        const Rational mid = (lo + hi) / Rational(2);
        if (mid * mid <= target) lo = mid;
        else hi = mid;
    }
    return {lo, hi};
}

}  // namespace

TEST_CASE("rational arithmetic is exact and canonical") {
    const Rational a(6, -4);
    CHECK(a.numerator() == -3);
    CHECK(a.denominator() == 2);
    CHECK(a + Rational(3, 2) == Rational(0));
    CHECK(Rational(2, 3).inverse() == Rational(3, 2));
    CHECK(Rational(-2, 3).pow(3) == Rational(-8, 27));
    CHECK(Rational(1, 3) < Rational(1, 2));
}

TEST_CASE("binomials against Pascal's triangle") {
    std::vector<std::vector<long>> pascal(31);
    for (long n = 0; n <= 30; ++n) {
        pascal[n].assign(n + 1, 1);
        for (long k = 1; k < n; ++k) pascal[n][k] = pascal[n - 1][k - 1] + pascal[n - 1][k];
    }
    for (long n = 0; n <= 30; ++n)
        for (long k = 0; k <= n; ++k) REQUIRE(binomial(n, k) == pascal[n][k]);
    CHECK(binomial(5, 7) == 0);
    for (long k = 0; k < 10; ++k) CHECK(binomial_signed(-1, k) == (k % 2 ? -1 : 1));
    CHECK(binomial_signed(-3, 2) == 6);
}

TEST_CASE("quadratic field axioms on random operands") {
    std::mt19937_64 rng(20240611);
    const QuadraticNumber one = QuadraticNumber::rational(1, 5);
    for (int i = 0; i < 10000; ++i) {
        const auto x = random_quad(rng);
        const auto y = random_quad(rng);
        const auto z = random_quad(rng);
        REQUIRE((x + y) + z == x + (y + z));
        REQUIRE((x * y) * z == x * (y * z));
        REQUIRE(x * y == y * x);
        REQUIRE(x * (y + z) == x * y + x * z);
        REQUIRE(x - x == QuadraticNumber(5));
        REQUIRE((x * y).field_norm() == x.field_norm() * y.field_norm());
        REQUIRE((x * y).conjugate() == x.conjugate() * y.conjugate());
        if (!x.is_zero()) {
            REQUIRE(x * x.inverse() == one);
            REQUIRE((y / x) * x == y);
        }
    }
}

TEST_CASE("exact sign and comparison") {
    const QuadraticNumber phi = golden_ratio();
    CHECK(quad_compare(phi - QuadraticNumber::rational(1, 5), golden_pow(-1)) == std::strong_ordering::equal);
    CHECK((phi * Rational(2) - QuadraticNumber::rational(1, 5)) == QuadraticNumber::root(5));
    CHECK(quad_compare(QuadraticNumber(Rational(3, 2), Rational(-1, 2), 5), QuadraticNumber(5)) == std::strong_ordering::greater);
    // F(k+1) - phi F(k) = (-1/phi)^k: tiny values with exactly alternating sign
    Integer f0 = 0, f1 = 1;
    for (long k = 1; k <= 80; ++k) {
        const Integer f2 = f0 + f1;
        f0 = f1;
        f1 = f2;
        const QuadraticNumber d = QuadraticNumber::rational(Rational(f1), 5) - phi * Rational(f0);
        REQUIRE(d.sign() == (k % 2 ? -1 : 1));
    }
    CHECK_THROWS_AS(QuadraticNumber::root(5) + QuadraticNumber::root(2), DomainError);
    CHECK(split_square(12) == std::pair<long, long>{2, 3});
    CHECK(split_square(5) == std::pair<long, long>{1, 5});
}

TEST_CASE("golden powers: small cases and Lucas/Fibonacci structure") {
    CHECK(golden_pow(0) == QuadraticNumber::rational(1, 5));
    CHECK(golden_pow(2) == QuadraticNumber(Rational(3, 2), Rational(1, 2), 5));
    CHECK(golden_pow(-2) == QuadraticNumber(Rational(3, 2), Rational(-1, 2), 5));
    Integer lucas0 = 2, lucas1 = 1, fib0 = 0, fib1 = 1;
    for (long k = 0; k <= 150; ++k) {
        const QuadraticNumber twice = golden_pow(k) * Rational(2);
        REQUIRE(twice.a() == Rational(lucas0));
        REQUIRE(twice.b() == Rational(fib0));
        const Integer l2 = lucas0 + lucas1, f2 = fib0 + fib1;
        lucas0 = lucas1;
        lucas1 = l2;
        fib0 = fib1;
        fib1 = f2;
    }
}

TEST_CASE("golden powers multiply exactly") {
    for (long j = -200; j <= 200; j += 7)
        for (long k = -200; k <= 200; k += 3) REQUIRE(golden_pow(j) * golden_pow(k) == golden_pow(j + k));
}

TEST_CASE("quad_to_float against rational bisection") {
    const Precision p(64);
    const auto [lo, hi] = bisect_sqrt(Rational(5), 80);
    const BigFloat r5 = quad_to_float(QuadraticNumber::root(5), p);
    CHECK(BigFloat(lo, p.plus(64)) <= r5.rounded(p.plus(64)) + ulp_scale(63, p.plus(64)) * BigFloat(4L, p));
    CHECK(abs(r5 - BigFloat(lo, p)) <= ulp_scale(62, p));
    CHECK(r5.to_string(20).rfind("2.2360679774997896", 0) == 0);
    // phi^-2 = (3 - sqrt 5) / 2: oracle from the same interval
    const BigFloat inv2 = quad_to_float(golden_pow(-2), p);
    const Rational mid = (Rational(3) - lo) / Rational(2);
    CHECK(abs(inv2 - BigFloat(mid, p)) <= ulp_scale(63, p));
    CHECK(inv2.to_string(20).rfind("3.8196601125010515", 0) == 0);
    CHECK(quad_to_float(QuadraticNumber(5), p).is_zero());
}

TEST_CASE("quad_to_float is monotone") {
    std::mt19937_64 rng(7);
    for (long bits : {24L, 53L, 128L}) {
        const Precision p(bits);
        for (int i = 0; i < 2000; ++i) {
            auto x = random_quad(rng);
            auto y = random_quad(rng);
            if (quad_compare(x, y) == std::strong_ordering::greater) std::swap(x, y);
            REQUIRE(quad_to_float(x, p) <= quad_to_float(y, p));
        }
    }
    // nearly equal values
    const QuadraticNumber a = golden_pow(40);
    const QuadraticNumber b = a + golden_pow(-60);
    CHECK(quad_to_float(a, Precision(53)) <= quad_to_float(b, Precision(53)));
}

TEST_CASE("bigfloat basics") {
    const Precision p(200);
    const BigFloat x = BigFloat::parse("1.25", p);
    CHECK(x == BigFloat(Rational(5, 4), p));
    CHECK(ldexp(x, 3) == BigFloat(10L, p));
    CHECK(pi(Precision(128)).to_string(36).rfind("3.14159265358979323846264338327", 0) == 0);
    const BigFloat third = BigFloat(1L, p) / BigFloat(3L, p);
    CHECK(BigFloat::parse(third.to_string(), p) == third);
    CHECK(third.precision() == p);
    CHECK(third.rounded(Precision(53)).to_double() == 1.0 / 3.0);
    CHECK(abs(exp(log(BigFloat(7L, p))) - BigFloat(7L, p)) < ulp_scale(190, p));
    CHECK(pow(BigFloat(2L, p), 10) == BigFloat(1024L, p));
    BigFloat acc(0L, p);
    acc.fma_accumulate(BigFloat(3L, p), BigFloat(4L, p));
    CHECK(acc == BigFloat(12L, p));
    // sqrt 5 from MPFR agrees with the exact-field conversion to 1 ulp
    CHECK(abs(sqrt(BigFloat(5L, p)) - quad_to_float(QuadraticNumber::root(5), p)) <= ulp_scale(198, p));
}

TEST_CASE("complex helpers") {
    const Precision p(96);
    const Complex z(BigFloat(3L, p), BigFloat(4L, p));
    CHECK(abs(z) == BigFloat(5L, p));
    CHECK(norm(z) == BigFloat(25L, p));
    const Complex q = z / z;
    CHECK(abs(q.re - BigFloat(1L, p)) < ulp_scale(90, p));
    CHECK(abs(q.im) < ulp_scale(90, p));
}

TEST_CASE("least squares recovers an exact polynomial fit") {
    const Precision p(160);
    BigMatrix a(8, 3, p);
    std::vector<BigFloat> y;
    for (std::size_t i = 0; i < 8; ++i) {
        const BigFloat t(static_cast<long>(i) + 1, p);
        a(i, 0) = BigFloat(1L, p);
        a(i, 1) = t;
        a(i, 2) = t * t;
        y.push_back(BigFloat(2L, p) - BigFloat(3L, p) * t + t * t / 4L);
    }
    const auto x = least_squares(a, y);
    CHECK(abs(x[0] - BigFloat(2L, p)) < ulp_scale(140, p));
    CHECK(abs(x[1] + BigFloat(3L, p)) < ulp_scale(140, p));
    CHECK(abs(x[2] - BigFloat(Rational(1, 4), p)) < ulp_scale(140, p));
    const auto row = least_squares_first_row(a);
    BigFloat x0(p);
    for (std::size_t i = 0; i < 8; ++i) x0 += row[i] * y[i];
    CHECK(abs(x0 - x[0]) < ulp_scale(130, p));
}

TEST_CASE("extrapolation is exact on its model class") {
    const Precision p(192);
    const long v_max = 64;
    std::vector<BigFloat> s;
    for (long v = 0; v <= v_max; ++v) {
        BigFloat t(Rational(7, 3), p);
        if (v > 0) {
            const BigFloat vv(v, p);
            t += BigFloat(2L, p) / vv - BigFloat(5L, p) * log(vv) / (vv * vv) + BigFloat(1L, p) / (vv * vv);
        }
        s.push_back(t);
    }
    const BigFloat e = extrapolate(s, p);
    CHECK(abs(e - BigFloat(Rational(7, 3), p)) < BigFloat(1e-30, p));
    // 1/(v+1) lies outside the model; its expansion in 1/v is what gets fitted
    std::vector<BigFloat> g;
    for (long v = 0; v <= v_max; ++v) g.push_back(BigFloat(1L, p) + BigFloat(1L, p) / BigFloat(v + 1, p));
    const BigFloat err = abs(extrapolate(g, p) - BigFloat(1L, p));
    INFO("error " << err.to_string(6));
    CHECK(err < BigFloat(1e-8, p));
    CHECK(err < abs(g.back() - BigFloat(1L, p)) * BigFloat(1e-5, p));
    const auto w = extrapolation_weights(v_max, p);
    BigFloat total(p);
    for (const auto& x : w.weights) total += x;
    CHECK(abs(total - BigFloat(1L, p)) < BigFloat(1e-40, p));  // constants are preserved
}
