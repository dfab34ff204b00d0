#pragma once

#include "smartpath/bernstein.hpp"
#include "smartpath/poly.hpp"

#include <utility>
#include <vector>

namespace smartpath {

struct HermiteSetup {
    std::vector<double> times;
    int l = 0;
    double a = 0.0, b = 1.0;
    std::vector<int> orders;  // per-time override, empty means all equal l

    int order(int i) const { return orders.empty() ? l : orders[i]; }
    int r() const { return static_cast<int>(times.size()); }
    void validate() const;
};

// c (t - t_i)^k prod_j ((t - t_i)^L - d_j)^e_j, kept in factored form
struct HermiteBasisPolynomial {
    double ti = 0.0;
    int k = 0;
    int L = 1;
    std::vector<std::pair<double, int>> factors;  // (d_j, e_j)
    double c = 1.0;

    int degree() const;
    double operator()(double t) const { return derivative_at(0, t); }
    // Taylor expansion about t, exact factor by factor
    double derivative_at(int m, double t) const;
    // expanded monomial coefficients in t (ill-conditioned for large degree)
    Polynomial expanded() const;
    // product of Bernstein forms on [a, b], then elevated to `degree` when larger
    BernsteinPolynomial bernstein(double a, double b, int degree = -1) const;
};

HermiteBasisPolynomial hermite_basis_polynomial(const HermiteSetup& setup, int i, int k);

struct CorrectionBudget {
    double M = 0.0;
    double delta = 0.0;
};

CorrectionBudget correction_budget(const HermiteSetup& setup, double eps, const IntervalSet& K);

struct SwdpOptions {
    int nu_start = 8;
    int nu_cap = 4096;
    int grid = 1001;
};

struct SwdpResult {
    BernsteinPolynomial g;
    int nu = 0;
    CorrectionBudget budget;
    double bernstein_residual = 0.0;  // max derivative residual of B_nu(f) on K' against delta
    double sup_error = 0.0;           // ||f - g|| on [a, b]
    double derivative_error = 0.0;    // max_k ||f^(k) - g^(k)||_K
    double max_interp_residual = 0.0;
    bool delta_criterion = false;
    bool success = false;
};

// g = B_nu(f) + sum b_ik P_ik
BernsteinPolynomial interpolating_correction(const FunctionOracle& f, const HermiteSetup& setup, int nu,
                                             const std::vector<std::vector<double>>& target_jets);

SwdpResult approximate_with_interpolation(const FunctionOracle& f, const HermiteSetup& setup, double eps,
                                          const IntervalSet& K, const SwdpOptions& opt = {});

}  // namespace smartpath
