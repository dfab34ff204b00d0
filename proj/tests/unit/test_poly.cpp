#include "helpers.hpp"

#include <doctest.h>

#include <random>

using namespace smartpath;
using th::vec;

TEST_CASE("evaluation") {
    CHECK(Polynomial({1, 2})(3.0) == 7.0);
    CHECK(Polynomial()(4.2) == 0.0);
    PolynomialPath p({Polynomial::monomial(2), Polynomial::monomial(3)});
    Vec x = p(2.0);
    CHECK(x[0] == 4.0);
    CHECK(x[1] == 8.0);
}

TEST_CASE("normalization trims trailing zeros") {
    Polynomial p({1, 2, 0, 0});
    CHECK(p.degree() == 1);
    CHECK(Polynomial({0, 0}).is_zero());
}

TEST_CASE("derivative") {
    Polynomial t3 = Polynomial::monomial(3);
    CHECK(derivative(t3, 1) == Polynomial({0, 0, 3}));
    CHECK(derivative(t3, 4).is_zero());
    Polynomial q = power(Polynomial({-1, 0, 1}), 2);
    CHECK(derivative(q, 1)(0.0) == doctest::Approx(0.0));
}

TEST_CASE("product rule and finite differences") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> U(-1, 1);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> a(5), b(6);
        for (auto& c : a) c = U(rng);
        for (auto& c : b) c = U(rng);
        Polynomial p(a), q(b);
        Polynomial lhs = derivative(p * q);
        Polynomial rhs = derivative(p) * q + p * derivative(q);
        for (int k = 0; k <= lhs.degree(); ++k) CHECK(lhs.coeff(k) == doctest::Approx(rhs.coeff(k)).epsilon(1e-12));
        double t = U(rng), h = 1e-5;
        CHECK(derivative(p)(t) == doctest::Approx((p(t + h) - p(t - h)) / (2 * h)).epsilon(1e-6));
    }
}

TEST_CASE("compose_affine") {
    PolynomialPath p({Polynomial::monomial(2), Polynomial::monomial(3)});
    CHECK(compose_affine(AffineFunctional(vec({1, 0}), 0), p) == Polynomial({0, 0, 1}));
    Polynomial g = compose_affine(AffineFunctional(vec({0, -1}), 1), p);
    CHECK(g.coeff(0) == doctest::Approx(1));
    CHECK(g.coeff(3) == doctest::Approx(-1));
    PolynomialPath r({Polynomial::monomial(1), Polynomial::monomial(2)});
    // x2 - x1 is normalized by sqrt(2)
    Polynomial d = compose_affine(AffineFunctional(vec({-1, 1}), 0), r) * std::sqrt(2.0);
    CHECK(d.coeff(1) == doctest::Approx(-1));
    CHECK(d.coeff(2) == doctest::Approx(1));
    CHECK_THROWS(compose_affine(AffineFunctional(vec({1, 0, 0}), 0), r));
}

TEST_CASE("one-sided leading terms") {
    auto a = one_sided_leading_term(Polynomial::monomial(2), 0.0, Side::Right);
    CHECK(a.order == 2);
    CHECK(a.sign == 1);
    CHECK(a.coeff == doctest::Approx(1));
    auto b = one_sided_leading_term(Polynomial::monomial(3), 0.0, Side::Left);
    CHECK(b.order == 3);
    CHECK(b.sign == -1);
    CHECK(b.coeff == doctest::Approx(-1));
    auto c = one_sided_leading_term(Polynomial({1, 0, 0, -1}), 1.0, Side::Right);
    CHECK(c.order == 1);
    CHECK(c.sign == -1);
    CHECK(c.coeff == doctest::Approx(-3));
    auto z = one_sided_leading_term(Polynomial(), 0.3, Side::Right);
    CHECK(z.order == LeadingTerm::infinite);
    CHECK(z.sign == 0);
}

TEST_CASE("leading order equals root multiplicity of p - p(t0)") {
    // (t-2)^3 (t+1) + 5 about t0 = 2
    Polynomial p = power(Polynomial({-2, 1}), 3) * Polynomial({1, 1}) + Polynomial::constant(5);
    auto lt = one_sided_leading_term(p - Polynomial::constant(p(2.0)), 2.0, Side::Right);
    CHECK(lt.order == 3);
    CHECK(lt.coeff == doctest::Approx(3));
}

TEST_CASE("taylor jets") {
    PolynomialPath p({Polynomial::monomial(2), Polynomial::monomial(3)});
    Jet j = taylor_jet(p, 0.0, 2);
    REQUIRE(j.order() == 2);
    CHECK(j.coeffs[2][0] == 1.0);
    CHECK(j.coeffs[2][1] == 0.0);
    CHECK(j.coeffs[0].norm() == 0.0);

    Jet k = taylor_jet(PolynomialPath({Polynomial::monomial(1)}), 5.0, 1);
    CHECK(k.coeffs[0][0] == 5.0);
    CHECK(k.coeffs[1][0] == 1.0);

    Polynomial q = power(Polynomial({-1, 1}), 2) + Polynomial::constant(2);
    Jet m = taylor_jet(PolynomialPath({q}), 1.0, 2);
    CHECK(m.coeffs[0][0] == doctest::Approx(2));
    CHECK(m.coeffs[1][0] == doctest::Approx(0).epsilon(1e-14));
    CHECK(m.coeffs[2][0] == doctest::Approx(1));
}

TEST_CASE("jet round trip") {
    Polynomial q({0.5, -1, 2, 0.25, 3});
    PolynomialPath p({q});
    PolynomialPath back = path_from_jet(taylor_jet(p, 0.7, 4));
    for (int k = 0; k <= 4; ++k) CHECK(back[0].coeff(k) == doctest::Approx(q.coeff(k)).epsilon(1e-12));
}

TEST_CASE("Bernstein form conversion") {
    Polynomial p({1, -2, 0, 4});
    auto b = BernsteinPolynomial::from_polynomial(p, 6);
    for (double t : {0.0, 0.2, 0.5, 0.9, 1.0}) CHECK(b(t) == doctest::Approx(p(t)));
    auto [l, r] = b.split(0.3);
    CHECK(l(0.1) == doctest::Approx(p(0.1)));
    CHECK(r(0.8) == doctest::Approx(p(0.8)));
    CHECK(b.derivative_at(2, 0.4) == doctest::Approx(derivative(p, 2)(0.4)));
    CHECK(b.elevate(9)(0.37) == doctest::Approx(p(0.37)));
}
