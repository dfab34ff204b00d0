#pragma once

#include <Eigen/Dense>

#include <climits>
#include <utility>
#include <vector>

namespace smartpath {

using Vec = Eigen::VectorXd;

// Dense univariate polynomial, coeffs[k] multiplies t^k.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<double> coeffs);

    static Polynomial constant(double c);
    static Polynomial monomial(int k, double c = 1.0);
    static Polynomial linear(double c0, double c1);

    const std::vector<double>& coeffs() const { return c_; }
    double coeff(int k) const;
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    double max_abs_coeff() const;

    double operator()(double t) const;

    Polynomial operator-() const;
    Polynomial& operator+=(const Polynomial& o);
    Polynomial& operator-=(const Polynomial& o);
    Polynomial& operator*=(double s);

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(Polynomial a, double s) { return a *= s; }
    friend Polynomial operator*(double s, Polynomial a) { return a *= s; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);

    bool operator==(const Polynomial& o) const { return c_ == o.c_; }

private:
    void normalize();
    std::vector<double> c_;
};

Polynomial derivative(const Polynomial& p, int order = 1);
Polynomial power(const Polynomial& p, int e);
// p(q(t))
Polynomial compose(const Polynomial& p, const Polynomial& q);
// s -> p(t0 + s), via repeated synthetic division
Polynomial taylor_shift(const Polynomial& p, double t0);
// s -> p(-s)
Polynomial reflect(const Polynomial& p);

enum class Side { Left, Right };

struct LeadingTerm {
    static constexpr int infinite = INT_MAX;
    int order = infinite;
    int sign = 0;
    double coeff = 0.0;
};

// p(t0 +- tau) = coeff * tau^order + ...
LeadingTerm one_sided_leading_term(const Polynomial& p, double t0, Side side);

// h(x) = b + a.x with |a| = 1 after construction.
class AffineFunctional {
public:
    AffineFunctional() = default;
    AffineFunctional(Vec gradient, double offset);

    const Vec& gradient() const { return a_; }
    double offset() const { return b_; }
    int dim() const { return static_cast<int>(a_.size()); }

    double operator()(const Vec& x) const { return b_ + a_.dot(x); }
    // linear part, h(x) - h(0)
    double linear(const Vec& v) const { return a_.dot(v); }

private:
    Vec a_;
    double b_ = 0.0;
};

class PolynomialPath {
public:
    PolynomialPath() = default;
    explicit PolynomialPath(std::vector<Polynomial> comps, double a = 0.0, double b = 1.0);

    int dim() const { return static_cast<int>(comps_.size()); }
    int degree() const;
    double lo() const { return a_; }
    double hi() const { return b_; }
    const Polynomial& operator[](int i) const { return comps_[i]; }
    const std::vector<Polynomial>& components() const { return comps_; }

    Vec operator()(double t) const;
    PolynomialPath derivative(int order = 1) const;

private:
    std::vector<Polynomial> comps_;
    double a_ = 0.0, b_ = 1.0;
};

struct Jet {
    double t0 = 0.0;
    std::vector<Vec> coeffs;  // entry m is alpha^(m)(t0) / m!
    int order() const { return static_cast<int>(coeffs.size()) - 1; }
};

Jet taylor_jet(const PolynomialPath& path, double t0, int order);
// Polynomial path reproducing the jet (in t, not in t - t0).
PolynomialPath path_from_jet(const Jet& jet);

Polynomial compose_affine(const AffineFunctional& h, const PolynomialPath& path);

// Polynomial in Bernstein form on [lo, hi].
class BernsteinPolynomial {
public:
    BernsteinPolynomial() = default;
    BernsteinPolynomial(std::vector<double> coeffs, double lo = 0.0, double hi = 1.0);

    static BernsteinPolynomial from_polynomial(const Polynomial& p, int degree, double lo = 0.0,
                                               double hi = 1.0);

    int degree() const { return static_cast<int>(b_.size()) - 1; }
    double lo() const { return lo_; }
    double hi() const { return hi_; }
    const std::vector<double>& coeffs() const { return b_; }
    std::vector<double>& coeffs() { return b_; }

    double operator()(double t) const;
    BernsteinPolynomial derivative(int order = 1) const;
    double derivative_at(int order, double t) const;
    BernsteinPolynomial elevate(int new_degree) const;
    // restriction to [t0, t1] inside [lo, hi], reparametrized on [t0, t1]
    BernsteinPolynomial restrict(double t0, double t1) const;
    std::pair<BernsteinPolynomial, BernsteinPolynomial> split(double t) const;
    Polynomial to_polynomial() const;

    BernsteinPolynomial& operator+=(const BernsteinPolynomial& o);
    BernsteinPolynomial& operator*=(double s);

private:
    std::vector<double> b_;
    double lo_ = 0.0, hi_ = 1.0;
};

class BernsteinPath {
public:
    BernsteinPath() = default;
    explicit BernsteinPath(std::vector<BernsteinPolynomial> comps);

    int dim() const { return static_cast<int>(comps_.size()); }
    int degree() const;
    double lo() const { return comps_.front().lo(); }
    double hi() const { return comps_.front().hi(); }
    const BernsteinPolynomial& operator[](int i) const { return comps_[i]; }
    BernsteinPolynomial& operator[](int i) { return comps_[i]; }

    Vec operator()(double t) const;
    Vec derivative_at(int order, double t) const;

private:
    std::vector<BernsteinPolynomial> comps_;
};

BernsteinPolynomial compose_affine(const AffineFunctional& h, const BernsteinPath& path);

double binomial(int n, int k);

}  // namespace smartpath
