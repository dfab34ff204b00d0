#include "smartpath/interp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace smartpath {

namespace {

double factorial(int n) {
    double r = 1.0;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

// truncated power series product, orders 0..m
std::vector<double> series_mul(const std::vector<double>& x, const std::vector<double>& y, int m) {
    std::vector<double> z(m + 1, 0.0);
    for (int i = 0; i <= m && i < static_cast<int>(x.size()); ++i)
        for (int j = 0; i + j <= m && j < static_cast<int>(y.size()); ++j) z[i + j] += x[i] * y[j];
    return z;
}

std::vector<double> series_pow(const std::vector<double>& x, int e, int m) {
    std::vector<double> z(m + 1, 0.0);
    z[0] = 1.0;
    for (int i = 0; i < e; ++i) z = series_mul(z, x, m);
    return z;
}

std::vector<double> bern_mul(const std::vector<double>& x, const std::vector<double>& y) {
    int p = static_cast<int>(x.size()) - 1, q = static_cast<int>(y.size()) - 1;
    std::vector<double> z(p + q + 1, 0.0);
    for (int i = 0; i <= p; ++i)
        for (int j = 0; j <= q; ++j) z[i + j] += binomial(p, i) * binomial(q, j) / binomial(p + q, i + j) * x[i] * y[j];
    return z;
}

std::vector<double> bern_pow(const std::vector<double>& x, int e) {
    std::vector<double> z = {1.0};
    for (int i = 0; i < e; ++i) z = bern_mul(z, x);
    return z;
}

}  // namespace

void HermiteSetup::validate() const {
    if (times.empty()) throw std::invalid_argument("hermite setup: no times");
    if (!orders.empty() && orders.size() != times.size())
        throw std::invalid_argument("hermite setup: order overrides do not match times");
    for (size_t i = 0; i < times.size(); ++i) {
        if (times[i] <= a || times[i] >= b) throw std::invalid_argument("hermite setup: time outside (a, b)");
        if (i > 0 && times[i] <= times[i - 1]) throw std::invalid_argument("hermite setup: times not increasing");
        if (order(static_cast<int>(i)) < 0 || order(static_cast<int>(i)) > l)
            throw std::invalid_argument("hermite setup: order override out of range");
    }
}

int HermiteBasisPolynomial::degree() const {
    int d = k;
    for (const auto& f : factors) d += L * f.second;
    return d;
}

double HermiteBasisPolynomial::derivative_at(int m, double t) const {
    double x0 = t - ti;
    std::vector<double> xL(m + 1, 0.0);
    xL[0] = std::pow(x0, L);
    for (int q = 1; q <= std::min(m, L); ++q) xL[q] = binomial(L, q) * std::pow(x0, L - q);
    std::vector<double> acc = series_pow({x0, 1.0}, k, m);
    for (const auto& [d, e] : factors) {
        std::vector<double> f = xL;
        f[0] -= d;
        acc = series_mul(acc, series_pow(f, e, m), m);
    }
    return c * acc[m] * factorial(m);
}

Polynomial HermiteBasisPolynomial::expanded() const {
    Polynomial x = Polynomial::linear(-ti, 1.0);
    Polynomial xL = power(x, L);
    Polynomial p = power(x, k);
    for (const auto& [d, e] : factors) p = p * power(xL - Polynomial::constant(d), e);
    return p * c;
}

BernsteinPolynomial HermiteBasisPolynomial::bernstein(double a, double b, int deg) const {
    std::vector<double> x = {a - ti, b - ti};
    std::vector<double> xL = bern_pow(x, L);
    std::vector<double> acc = bern_pow(x, k);
    for (const auto& [d, e] : factors) {
        std::vector<double> f = xL;
        for (double& v : f) v -= d;
        acc = bern_mul(acc, bern_pow(f, e));
    }
    for (double& v : acc) v *= c;
    BernsteinPolynomial B(acc, a, b);
    return deg > B.degree() ? B.elevate(deg) : B;
}

HermiteBasisPolynomial hermite_basis_polynomial(const HermiteSetup& setup, int i, int k) {
    setup.validate();
    int r = setup.r();
    if (i < 0 || i >= r) throw std::out_of_range("hermite basis: index out of range");
    if (k < 0 || k > setup.order(i)) throw std::out_of_range("hermite basis: derivative order out of range");
    HermiteBasisPolynomial P;
    P.ti = setup.times[i];
    P.k = k;
    P.L = setup.order(i) + 1;
    double c = factorial(k);
    for (int j = 0; j < r; ++j) {
        if (j == i) continue;
        double d = std::pow(setup.times[j] - P.ti, P.L);
        int e = setup.order(j) + 1;
        P.factors.emplace_back(d, e);
        c *= std::pow(-d, e);
    }
    P.c = 1.0 / c;
    return P;
}

CorrectionBudget correction_budget(const HermiteSetup& setup, double eps, const IntervalSet& K) {
    CorrectionBudget cb;
    const int grid = 2001;
    for (int i = 0; i < setup.r(); ++i)
        for (int k = 0; k <= setup.order(i); ++k) {
            HermiteBasisPolynomial P = hermite_basis_polynomial(setup, i, k);
            for (int m = 0; m <= setup.l; ++m) {
                for (int g = 0; g < grid; ++g) {
                    double t = setup.a + (setup.b - setup.a) * g / (grid - 1);
                    cb.M = std::max(cb.M, std::abs(P.derivative_at(m, t)));
                }
                for (const auto& [lo, hi] : K)
                    for (int g = 0; g < grid; ++g)
                        cb.M = std::max(cb.M, std::abs(P.derivative_at(m, lo + (hi - lo) * g / (grid - 1))));
            }
        }
    cb.M *= 1.05;
    cb.delta = eps / (1.0 + setup.r() * (setup.l + 1) * cb.M);
    return cb;
}

BernsteinPolynomial interpolating_correction(const FunctionOracle& f, const HermiteSetup& setup, int nu,
                                             const std::vector<std::vector<double>>& target_jets) {
    FunctionOracle g = f;
    g.a = setup.a;
    g.b = setup.b;
    BernsteinPolynomial B = bernstein_form(g, nu);
    BernsteinPolynomial out = B;
    for (int i = 0; i < setup.r(); ++i)
        for (int k = 0; k <= setup.order(i); ++k) {
            double bik = target_jets[i][k] - B.derivative_at(k, setup.times[i]);
            if (bik == 0.0) continue;
            BernsteinPolynomial Pb = hermite_basis_polynomial(setup, i, k).bernstein(setup.a, setup.b);
            Pb *= bik;
            out += Pb;
        }
    return out;
}

SwdpResult approximate_with_interpolation(const FunctionOracle& f, const HermiteSetup& setup, double eps,
                                          const IntervalSet& K, const SwdpOptions& opt) {
    if (!(eps > 0.0)) throw std::invalid_argument("approximate_with_interpolation: eps must be positive");
    setup.validate();
    for (double t : setup.times)
        if (!f.smooth_at(t)) throw std::invalid_argument("approximate_with_interpolation: time outside smooth set");
    std::vector<std::vector<double>> jets(setup.r());
    for (int i = 0; i < setup.r(); ++i)
        for (int k = 0; k <= setup.order(i); ++k) jets[i].push_back(f.derivative_eval(k, setup.times[i]));
    SwdpResult res;
    res.budget = correction_budget(setup, eps, K);
    std::vector<double> full, onK;
    for (int g = 0; g < opt.grid; ++g) full.push_back(setup.a + (setup.b - setup.a) * g / (opt.grid - 1));
    for (const auto& [lo, hi] : K)
        for (int g = 0; g < opt.grid; ++g) onK.push_back(lo + (hi - lo) * g / (opt.grid - 1));
    std::vector<double> Kp = onK;
    Kp.insert(Kp.end(), setup.times.begin(), setup.times.end());
    for (int nu = opt.nu_start; nu <= opt.nu_cap; nu *= 2) {
        FunctionOracle ff = f;
        ff.a = setup.a;
        ff.b = setup.b;
        BernsteinPolynomial B = bernstein_form(ff, nu);
        double resid = 0.0;
        for (double t : full) resid = std::max(resid, std::abs(B(t) - f(t)));
        for (int m = 0; m <= setup.l; ++m) {
            BernsteinPolynomial Bm = B.derivative(m);
            for (double t : Kp) resid = std::max(resid, std::abs(Bm(t) - f.derivative_eval(m, t)));
        }
        BernsteinPolynomial g = interpolating_correction(f, setup, nu, jets);
        double sup = 0.0, der = 0.0, interp = 0.0;
        for (double t : full) sup = std::max(sup, std::abs(g(t) - f(t)));
        for (int m = 0; m <= setup.l; ++m) {
            BernsteinPolynomial gm = g.derivative(m);
            for (double t : onK) der = std::max(der, std::abs(gm(t) - f.derivative_eval(m, t)));
        }
        for (int i = 0; i < setup.r(); ++i)
            for (int k = 0; k <= setup.order(i); ++k)
                interp = std::max(interp, std::abs(g.derivative_at(k, setup.times[i]) - jets[i][k]));
        res.g = g;
        res.nu = nu;
        res.bernstein_residual = resid;
        res.sup_error = sup;
        res.derivative_error = der;
        res.max_interp_residual = interp;
        res.delta_criterion = resid < res.budget.delta;
        res.success = res.delta_criterion || (sup < eps && der < eps);
        if (res.success) return res;
    }
    return res;
}

}  // namespace smartpath
