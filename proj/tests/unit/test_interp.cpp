#include "smartpath/interp.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace smartpath;

namespace {
HermiteSetup setup_of(std::vector<double> times, int l, double a = 0.0, double b = 1.0) {
    HermiteSetup s;
    s.times = std::move(times);
    s.l = l;
    s.a = a;
    s.b = b;
    return s;
}
}  // namespace

TEST_CASE("hermite basis closed forms") {
    HermiteSetup s = setup_of({0.0, 1.0}, 1, -1.0, 2.0);
    Polynomial p = hermite_basis_polynomial(s, 0, 0).expanded();
    Polynomial expect = power(Polynomial({-1, 0, 1}), 2);
    for (int k = 0; k <= 4; ++k) CHECK(p.coeff(k) == doctest::Approx(expect.coeff(k)));
    CHECK(p(0.0) == doctest::Approx(1));
    CHECK(derivative(p)(0.0) == doctest::Approx(0));
    CHECK(p(1.0) == doctest::Approx(0));
    CHECK(derivative(p)(1.0) == doctest::Approx(0));

    HermiteBasisPolynomial q = hermite_basis_polynomial(s, 0, 1);
    CHECK(q.derivative_at(1, 0.0) == doctest::Approx(1));
    CHECK(q(0.0) == doctest::Approx(0));

    HermiteBasisPolynomial c = hermite_basis_polynomial(setup_of({0.4}, 0), 0, 0);
    CHECK(c.degree() == 0);
    CHECK(c(0.9) == doctest::Approx(1));
}

TEST_CASE("setup validation") {
    CHECK_THROWS(hermite_basis_polynomial(setup_of({0.5, 0.5}, 1), 0, 0));
    CHECK_THROWS(hermite_basis_polynomial(setup_of({0.2, 0.6}, 1), 2, 0));
    CHECK_THROWS(hermite_basis_polynomial(setup_of({0.2, 0.6}, 1), 0, 2));
}

TEST_CASE("biorthogonality on random time sets") {
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> U(0.02, 0.98);
    double worst = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        int r = 1 + trial % 4, l = trial % 4;
        std::vector<double> t;
        while (static_cast<int>(t.size()) < r) {
            double x = U(rng);
            bool ok = true;
            for (double y : t) ok = ok && std::abs(x - y) > 0.05;
            if (ok) t.push_back(x);
        }
        std::sort(t.begin(), t.end());
        HermiteSetup s = setup_of(t, l);
        for (int i = 0; i < r; ++i)
            for (int k = 0; k <= l; ++k) {
                HermiteBasisPolynomial P = hermite_basis_polynomial(s, i, k);
                for (int j = 0; j < r; ++j)
                    for (int m = 0; m <= l; ++m) {
                        double want = (i == j && k == m) ? 1.0 : 0.0;
                        worst = std::max(worst, std::abs(P.derivative_at(m, t[j]) - want));
                    }
            }
    }
    CHECK(worst <= 1e-7);
}

TEST_CASE("linear functions need no correction") {
    FunctionOracle f = polynomial_oracle(Polynomial({0.2, 1.5}));
    SwdpResult r = approximate_with_interpolation(f, setup_of({0.3, 0.6}, 1), 0.01, {{0.0, 1.0}});
    CHECK(r.success);
    for (double x : {0.0, 0.25, 0.8, 1.0}) CHECK(r.g(x) == doctest::Approx(f(x)));
}

TEST_CASE("interpolating approximation of |x - 1/2|") {
    FunctionOracle f = abs_oracle(0.5);
    HermiteSetup s = setup_of({0.25, 0.75}, 1);
    SwdpResult r = approximate_with_interpolation(f, s, 0.05, {{0.0, 0.35}, {0.65, 1.0}});
    REQUIRE(r.success);
    CHECK(r.nu <= 4096);
    for (double t : s.times)
        for (int k = 0; k <= 1; ++k) {
            double fk = k == 0 ? f(t) : f.derivative_eval(1, t);
            CHECK(std::abs(r.g.derivative_at(k, t) - fk) <= 1e-8);
        }
    double sup = 0.0;
    for (int i = 0; i <= 1000; ++i) sup = std::max(sup, std::abs(r.g(i / 1000.0) - f(i / 1000.0)));
    CHECK(sup < 0.05);
    CHECK_THROWS(approximate_with_interpolation(f, s, 0.0, {{0.0, 0.35}}));
}
