#include "smartpath/poly.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace smartpath {

namespace {
constexpr double kTrim = 1e-12;
}

double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    k = std::min(k, n - k);
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

Polynomial::Polynomial(std::vector<double> coeffs) : c_(std::move(coeffs)) { normalize(); }

Polynomial Polynomial::constant(double c) { return Polynomial({c}); }

Polynomial Polynomial::monomial(int k, double c) {
    std::vector<double> v(k + 1, 0.0);
    v[k] = c;
    return Polynomial(std::move(v));
}

Polynomial Polynomial::linear(double c0, double c1) { return Polynomial({c0, c1}); }

void Polynomial::normalize() {
    double m = max_abs_coeff();
    while (!c_.empty() && std::abs(c_.back()) <= kTrim * m) c_.pop_back();
}

double Polynomial::coeff(int k) const {
    return (k >= 0 && k < static_cast<int>(c_.size())) ? c_[k] : 0.0;
}

double Polynomial::max_abs_coeff() const {
    double m = 0.0;
    for (double v : c_) m = std::max(m, std::abs(v));
    return m;
}

double Polynomial::operator()(double t) const {
    double r = 0.0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * t + *it;
    return r;
}

Polynomial Polynomial::operator-() const {
    Polynomial r = *this;
    for (double& v : r.c_) v = -v;
    return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0.0);
    for (size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    normalize();
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0.0);
    for (size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    normalize();
    return *this;
}

Polynomial& Polynomial::operator*=(double s) {
    for (double& v : c_) v *= s;
    normalize();
    return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return Polynomial();
    std::vector<double> r(a.c_.size() + b.c_.size() - 1, 0.0);
    for (size_t i = 0; i < a.c_.size(); ++i)
        for (size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    return Polynomial(std::move(r));
}

Polynomial derivative(const Polynomial& p, int order) {
    if (order < 0) throw std::invalid_argument("derivative: negative order");
    std::vector<double> c = p.coeffs();
    for (int k = 0; k < order; ++k) {
        if (c.empty()) break;
        std::vector<double> d(c.size() - 1);
        for (size_t i = 1; i < c.size(); ++i) d[i - 1] = c[i] * static_cast<double>(i);
        c = std::move(d);
    }
    return Polynomial(std::move(c));
}

Polynomial power(const Polynomial& p, int e) {
    Polynomial r = Polynomial::constant(1.0);
    for (int i = 0; i < e; ++i) r = r * p;
    return r;
}

Polynomial compose(const Polynomial& p, const Polynomial& q) {
    Polynomial r;
    const auto& c = p.coeffs();
    for (auto it = c.rbegin(); it != c.rend(); ++it) r = r * q + Polynomial::constant(*it);
    return r;
}

Polynomial taylor_shift(const Polynomial& p, double t0) {
    std::vector<double> c = p.coeffs();
    int n = static_cast<int>(c.size()) - 1;
    for (int k = 0; k < n; ++k)
        for (int j = n - 1; j >= k; --j) c[j] += t0 * c[j + 1];
    return Polynomial(std::move(c));
}

Polynomial reflect(const Polynomial& p) {
    std::vector<double> c = p.coeffs();
    for (size_t i = 1; i < c.size(); i += 2) c[i] = -c[i];
    return Polynomial(std::move(c));
}

LeadingTerm one_sided_leading_term(const Polynomial& p, double t0, Side side) {
    Polynomial q = taylor_shift(p, t0);
    if (side == Side::Left) q = reflect(q);
    LeadingTerm lt;
    double m = q.max_abs_coeff();
    if (m == 0.0) return lt;
    const auto& c = q.coeffs();
    for (size_t i = 0; i < c.size(); ++i) {
        if (std::abs(c[i]) > kTrim * m) {
            lt.order = static_cast<int>(i);
            lt.sign = c[i] > 0 ? 1 : -1;
            lt.coeff = c[i];
            return lt;
        }
    }
    return lt;
}

AffineFunctional::AffineFunctional(Vec gradient, double offset) {
    double nrm = gradient.norm();
    if (!(nrm > 0.0) || !std::isfinite(nrm))
        throw std::invalid_argument("affine functional with zero gradient");
    a_ = gradient / nrm;
    b_ = offset / nrm;
}

PolynomialPath::PolynomialPath(std::vector<Polynomial> comps, double a, double b)
    : comps_(std::move(comps)), a_(a), b_(b) {
    if (comps_.empty()) throw std::invalid_argument("path needs at least one component");
}

int PolynomialPath::degree() const {
    int d = -1;
    for (const auto& c : comps_) d = std::max(d, c.degree());
    return d;
}

Vec PolynomialPath::operator()(double t) const {
    Vec v(dim());
    for (int i = 0; i < dim(); ++i) v[i] = comps_[i](t);
    return v;
}

PolynomialPath PolynomialPath::derivative(int order) const {
    std::vector<Polynomial> d;
    for (const auto& c : comps_) d.push_back(smartpath::derivative(c, order));
    return PolynomialPath(std::move(d), a_, b_);
}

Jet taylor_jet(const PolynomialPath& path, double t0, int order) {
    Jet jet;
    jet.t0 = t0;
    std::vector<Polynomial> shifted;
    for (int i = 0; i < path.dim(); ++i) shifted.push_back(taylor_shift(path[i], t0));
    for (int m = 0; m <= order; ++m) {
        Vec v(path.dim());
        for (int i = 0; i < path.dim(); ++i) v[i] = shifted[i].coeff(m);
        jet.coeffs.push_back(v);
    }
    return jet;
}

PolynomialPath path_from_jet(const Jet& jet) {
    int n = static_cast<int>(jet.coeffs.front().size());
    std::vector<Polynomial> comps;
    for (int i = 0; i < n; ++i) {
        std::vector<double> c;
        for (const auto& v : jet.coeffs) c.push_back(v[i]);
        comps.push_back(taylor_shift(Polynomial(c), -jet.t0));
    }
    return PolynomialPath(std::move(comps));
}

Polynomial compose_affine(const AffineFunctional& h, const PolynomialPath& path) {
    if (h.dim() != path.dim()) throw std::invalid_argument("compose_affine: dimension mismatch");
    Polynomial r = Polynomial::constant(h.offset());
    for (int i = 0; i < path.dim(); ++i) r += h.gradient()[i] * path[i];
    return r;
}

BernsteinPolynomial::BernsteinPolynomial(std::vector<double> coeffs, double lo, double hi)
    : b_(std::move(coeffs)), lo_(lo), hi_(hi) {
    if (b_.empty()) b_.push_back(0.0);
    if (!(hi > lo)) throw std::invalid_argument("bernstein form needs lo < hi");
}

BernsteinPolynomial BernsteinPolynomial::from_polynomial(const Polynomial& p, int degree, double lo,
                                                         double hi) {
    if (degree < p.degree()) throw std::invalid_argument("from_polynomial: degree too small");
    // p(lo + (hi - lo) u) in powers of u
    Polynomial q = taylor_shift(p, lo);
    std::vector<double> a(degree + 1, 0.0);
    double s = 1.0;
    for (int j = 0; j <= q.degree(); ++j, s *= (hi - lo)) a[j] = q.coeff(j) * s;
    std::vector<double> b(degree + 1, 0.0);
    for (int k = 0; k <= degree; ++k) {
        double acc = 0.0, ratio = 1.0;
        for (int j = 0; j <= k; ++j) {
            acc += ratio * a[j];
            ratio *= static_cast<double>(k - j) / (degree - j);
        }
        b[k] = acc;
    }
    return BernsteinPolynomial(std::move(b), lo, hi);
}

double BernsteinPolynomial::operator()(double t) const {
    double u = (t - lo_) / (hi_ - lo_);
    std::vector<double> w = b_;
    int n = degree();
    for (int r = 1; r <= n; ++r)
        for (int k = 0; k <= n - r; ++k) w[k] = (1.0 - u) * w[k] + u * w[k + 1];
    return w[0];
}

BernsteinPolynomial BernsteinPolynomial::derivative(int order) const {
    std::vector<double> c = b_;
    double scale = 1.0 / (hi_ - lo_);
    for (int r = 0; r < order; ++r) {
        int n = static_cast<int>(c.size()) - 1;
        if (n == 0) {
            c = {0.0};
            continue;
        }
        std::vector<double> d(n);
        for (int k = 0; k < n; ++k) d[k] = n * (c[k + 1] - c[k]) * scale;
        c = std::move(d);
    }
    return BernsteinPolynomial(std::move(c), lo_, hi_);
}

double BernsteinPolynomial::derivative_at(int order, double t) const { return derivative(order)(t); }

BernsteinPolynomial BernsteinPolynomial::elevate(int new_degree) const {
    std::vector<double> c = b_;
    for (int n = degree(); n < new_degree; ++n) {
        std::vector<double> d(n + 2);
        d[0] = c[0];
        d[n + 1] = c[n];
        for (int k = 1; k <= n; ++k) {
            double a = static_cast<double>(k) / (n + 1);
            d[k] = a * c[k - 1] + (1.0 - a) * c[k];
        }
        c = std::move(d);
    }
    return BernsteinPolynomial(std::move(c), lo_, hi_);
}

std::pair<BernsteinPolynomial, BernsteinPolynomial> BernsteinPolynomial::split(double t) const {
    double u = (t - lo_) / (hi_ - lo_);
    int n = degree();
    std::vector<double> w = b_, left(n + 1), right(n + 1);
    left[0] = w[0];
    right[n] = w[n];
    for (int r = 1; r <= n; ++r) {
        for (int k = 0; k <= n - r; ++k) w[k] = (1.0 - u) * w[k] + u * w[k + 1];
        left[r] = w[0];
        right[n - r] = w[n - r];
    }
    return {BernsteinPolynomial(std::move(left), lo_, t), BernsteinPolynomial(std::move(right), t, hi_)};
}

BernsteinPolynomial BernsteinPolynomial::restrict(double t0, double t1) const {
    BernsteinPolynomial a = (t1 < hi_) ? split(t1).first : *this;
    if (t0 > a.lo_) a = a.split(t0).second;
    return a;
}

Polynomial BernsteinPolynomial::to_polynomial() const {
    int n = degree();
    std::vector<double> a(n + 1, 0.0);
    for (int j = 0; j <= n; ++j) {
        double acc = 0.0, mag = 0.0;
        for (int i = 0; i <= j; ++i) {
            acc += (((j - i) % 2) ? -1.0 : 1.0) * binomial(j, i) * b_[i];
            mag += binomial(j, i) * std::abs(b_[i]);
        }
        // forward differences at rounding level are zero
        if (std::abs(acc) <= 8.0 * (j + 1) * std::numeric_limits<double>::epsilon() * mag) acc = 0.0;
        a[j] = binomial(n, j) * acc;
    }
    double w = hi_ - lo_;
    return compose(Polynomial(a), Polynomial::linear(-lo_ / w, 1.0 / w));
}

BernsteinPolynomial& BernsteinPolynomial::operator+=(const BernsteinPolynomial& o) {
    int n = std::max(degree(), o.degree());
    BernsteinPolynomial x = elevate(n), y = o.elevate(n);
    for (int k = 0; k <= n; ++k) x.b_[k] += y.b_[k];
    *this = std::move(x);
    return *this;
}

BernsteinPolynomial& BernsteinPolynomial::operator*=(double s) {
    for (double& v : b_) v *= s;
    return *this;
}

BernsteinPath::BernsteinPath(std::vector<BernsteinPolynomial> comps) : comps_(std::move(comps)) {
    if (comps_.empty()) throw std::invalid_argument("path needs at least one component");
}

int BernsteinPath::degree() const {
    int d = 0;
    for (const auto& c : comps_) d = std::max(d, c.degree());
    return d;
}

Vec BernsteinPath::operator()(double t) const {
    Vec v(dim());
    for (int i = 0; i < dim(); ++i) v[i] = comps_[i](t);
    return v;
}

Vec BernsteinPath::derivative_at(int order, double t) const {
    Vec v(dim());
    for (int i = 0; i < dim(); ++i) v[i] = comps_[i].derivative_at(order, t);
    return v;
}

BernsteinPolynomial compose_affine(const AffineFunctional& h, const BernsteinPath& path) {
    if (h.dim() != path.dim()) throw std::invalid_argument("compose_affine: dimension mismatch");
    int n = path.degree();
    std::vector<double> c(n + 1, h.offset());
    for (int i = 0; i < path.dim(); ++i) {
        BernsteinPolynomial e = path[i].elevate(n);
        for (int k = 0; k <= n; ++k) c[k] += h.gradient()[i] * e.coeffs()[k];
    }
    return BernsteinPolynomial(std::move(c), path.lo(), path.hi());
}

}  // namespace smartpath
