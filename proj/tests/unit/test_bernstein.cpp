#include "smartpath/bernstein.hpp"

#include <doctest.h>

#include <cmath>

using namespace smartpath;

namespace {
FunctionOracle poly(std::vector<double> c) { return polynomial_oracle(Polynomial(std::move(c))); }
}  // namespace

TEST_CASE("bernstein_poly reproduces constants and linear functions") {
    Polynomial g = bernstein_poly(poly({0, 1}), 5);
    CHECK(g.coeff(1) == doctest::Approx(1));
    CHECK(std::abs(g.coeff(0)) < 1e-12);
    CHECK(g.degree() == 1);
    Polynomial one = bernstein_poly(poly({1}), 7);
    CHECK(one.degree() == 0);
    CHECK(one.coeff(0) == doctest::Approx(1));
}

TEST_CASE("bernstein_poly of x^2") {
    Polynomial g = bernstein_poly(poly({0, 0, 1}), 4);
    CHECK(g.coeff(0) == doctest::Approx(0).epsilon(1e-14));
    CHECK(g.coeff(1) == doctest::Approx(0.25));
    CHECK(g.coeff(2) == doctest::Approx(0.75));
}

TEST_CASE("bernstein_poly on [a,b] interpolates endpoints") {
    FunctionOracle f = polynomial_oracle(Polynomial({1, 0, 0, 1}), -1.0, 2.0);
    Polynomial g = bernstein_poly(f, 9, -1.0, 2.0);
    CHECK(g(-1.0) == doctest::Approx(f(-1.0)).epsilon(1e-12));
    CHECK(g(2.0) == doctest::Approx(f(2.0)).epsilon(1e-12));
    CHECK_THROWS(bernstein_poly(f, 0, -1.0, 2.0));
    CHECK_THROWS(bernstein_poly(f, 3, 1.0, 1.0));
}

TEST_CASE("bernstein_derivative_direct") {
    CHECK(bernstein_derivative_direct(poly({0, 1}), 6, 1, 0.37) == doctest::Approx(1));
    CHECK(bernstein_derivative_direct(poly({0, 0, 1}), 4, 1, 0.0) == doctest::Approx(0.25));
    FunctionOracle f = abs_oracle(0.5);
    CHECK(bernstein_derivative_direct(f, 9, 0, 0.3) == doctest::Approx(bernstein_eval(f, 9, 0.3)));
    CHECK_THROWS(bernstein_derivative_direct(f, 3, 4, 0.5));
    for (int nu : {8, 32, 48, 64})
        for (int k = 0; k <= 4; ++k) {
            Polynomial d = derivative(bernstein_poly(poly({0, 1, -3, 0, 2, 1}), nu), k);
            CHECK(bernstein_derivative_direct(poly({0, 1, -3, 0, 2, 1}), nu, k, 0.41) ==
                  doctest::Approx(d(0.41)).epsilon(1e-8));
        }
}

TEST_CASE("divided differences") {
    FunctionOracle f = poly({0, 0, 1});
    CHECK(divided_difference({0, 1}, f) == doctest::Approx(1));
    CHECK(divided_difference({0, 1, 2}, f) == doctest::Approx(1));
    CHECK(divided_difference({0.3, 0.3}, f) == doctest::Approx(0.6));
    CHECK_THROWS(divided_difference({0.5, 0.5}, abs_oracle(0.5)));
}

TEST_CASE("bnu_st") {
    FunctionOracle f = poly({0, 0, 1});
    CHECK(bnu_st(f, 7, 0, 0, 0.3) == doctest::Approx(bernstein_eval(f, 7, 0.3)));
    for (int nu : {3, 10})
        for (double x : {0.1, 0.5, 0.8}) CHECK(bnu_st(f, nu, 1, 1, x) == doctest::Approx(1));
    double lhs = bernstein_eval(f, 4, 0.5) - 0.25;
    double rhs = 0.25 * 0.25 * bnu_st(f, 4, 1, 1, 0.5);
    CHECK(lhs == doctest::Approx(1.0 / 16));
    CHECK(rhs == doctest::Approx(1.0 / 16));
}

TEST_CASE("bff identity on several functions") {
    for (const FunctionOracle& f : {poly({0, 0, 1}), poly({0, 0, 0, 1}), abs_oracle(0.5)})
        for (int nu : {8, 33, 64})
            for (double x : {0.05, 0.2, 0.35, 0.7, 0.9}) {
                double lhs = bernstein_eval(f, nu, x) - f(x);
                double rhs = x * (1 - x) / nu * bnu_st(f, nu, 1, 1, x);
                CHECK(std::abs(lhs - rhs) < 1e-10);
            }
}

TEST_CASE("binomial moments and tails") {
    CHECK(binomial_moment(9, 0.3, 0) == doctest::Approx(1));
    CHECK(std::abs(binomial_moment(9, 0.3, 1)) < 1e-12);
    CHECK(binomial_moment(9, 0.3, 2) == doctest::Approx(9 * 0.3 * 0.7));
    CHECK(tail_sum(20, 0.4, 1.0) == 0.0);
    CHECK(tail_sum(10, 0.5, 0.4) == doctest::Approx(2.0 / 1024));
    CHECK(tail_sum(15, 0.0, 0.1) == 0.0);
    for (int m = 1; m <= 3; ++m)
        for (int nu : {10, 40})
            for (double x : {0.1, 0.5}) {
                CHECK(binomial_moment(nu, x, 2 * m) <= moment_constant(m) * std::pow(nu, m));
                CHECK(tail_sum(nu, x, 0.2) <= tail_constant(0.2, m) / std::pow(nu, m));
            }
}

TEST_CASE("q polynomials") {
    QTable q0 = q_polynomials(0);
    CHECK(q0.size() == 1);
    CHECK(q0.at({0, 0}) == Polynomial::constant(1));
    QTable q1 = q_polynomials(1);
    CHECK(q1.at({0, 1}) == Polynomial::constant(1));
    CHECK(q1.at({0, 0}).is_zero());
    CHECK((!q1.count({1, 0}) || q1.at({1, 0}).is_zero()));
    const int nu = 6, k = 3;
    const double x = 0.3;
    Polynomial base = power(Polynomial::monomial(1), k) * power(Polynomial({1, -1}), nu - k);
    for (int l = 0; l <= 3; ++l) {
        double sum = 0.0;
        for (const auto& [key, p] : q_polynomials(l))
            sum += std::pow(nu, key.first) * std::pow(k - nu * x, key.second) * p(x);
        double pref = std::pow(x, k - l) * std::pow(1 - x, nu - k - l);
        CHECK(pref * sum == doctest::Approx(derivative(base, l)(x)).epsilon(1e-8));
    }
}

TEST_CASE("smooth_error_bound") {
    FunctionOracle f = poly({0, 0, 1});
    DerivativeNorms n = derivative_norms(f, {{0, 1}}, 4);
    CHECK(smooth_error_bound(0, 10, 0.5, n) == doctest::Approx(0.025));
    CHECK(bernstein_eval(f, 10, 0.5) - 0.25 == doctest::Approx(0.025));
    CHECK(smooth_error_bound(0, 10, 0.0, n) == 0.0);
    CHECK(smooth_error_bound(1, 10, 0.5, n) == doctest::Approx(0.0));
    DerivativeNorms partial;
    partial.norms[0] = 1.0;
    CHECK_THROWS(smooth_error_bound(0, 10, 0.5, partial));
}

TEST_CASE("compact_error_bound dominates the measured error") {
    FunctionOracle f = abs_oracle(0.5);
    IntervalSet K = {{0.0, 0.3}};
    DerivativeNorms n = derivative_norms(f, K, 4);
    CompactBoundConstants c = compact_constants(f, K, 1);
    for (int nu : {16, 32, 64, 128}) {
        BernsteinPolynomial B = bernstein_form(f, nu);
        for (int i = 1; i <= 200; ++i) {
            double x = 0.3 * i / 200;
            double err = std::abs(B.derivative_at(1, x) - f.derivative_eval(1, x));
            CHECK(err <= compact_error_bound(f, 1, nu, x, n, c));
        }
    }
}

TEST_CASE("compact constants for l = 0") {
    FunctionOracle f = abs_oracle(0.5);
    IntervalSet K = {{0.1, 0.3}};
    CompactBoundConstants c = compact_constants(f, K, 0);
    CHECK(c.C_f_K_l == doctest::Approx(c.N_f_K * c.A.at(2)).epsilon(1e-9));
    DerivativeNorms n = derivative_norms(f, K, 3);
    DerivativeNorms ns = derivative_norms(poly({0.5, -1}), {{0, 1}}, 2);
    // f = 1/2 - x on K; compact bound adds positive terms to the smooth one
    CHECK(compact_error_bound(f, 0, 50, 0.2, n, c) >= smooth_error_bound(0, 50, 0.2, ns));
}

TEST_CASE("comparison gap") {
    FunctionOracle f1 = abs_oracle(0.5);
    auto z = comparison_gap(f1, f1, 1, 32, {{0.2, 0.4}}, {{0.1, 0.9}});
    CHECK(z.measured == 0.0);
    FunctionOracle f2 = f1;
    f2.eval = [](double x) { return std::abs(std::clamp(x, 0.1, 0.9) - 0.5); };
    for (int nu : {32, 64, 128}) {
        auto g = comparison_gap(f1, f2, 1, nu, {{0.2, 0.4}}, {{0.1, 0.9}});
        CHECK(g.measured <= g.bound);
    }
}

TEST_CASE("partition of unity, mean and variance") {
    for (int nu = 1; nu <= 200; nu += 13)
        for (int i = 0; i <= 100; ++i) {
            double x = i / 100.0;
            auto w = bernstein_basis_all(nu, x);
            double s = 0, m = 0, v = 0;
            for (int k = 0; k <= nu; ++k) {
                s += w[k];
                m += k * w[k];
                v += (k - nu * x) * (k - nu * x) * w[k];
            }
            CHECK(std::abs(s - 1) < 1e-12);
            CHECK(std::abs(m - nu * x) < 1e-12 * nu);
            CHECK(std::abs(v - nu * x * (1 - x)) < 1e-12 * nu);
        }
}
