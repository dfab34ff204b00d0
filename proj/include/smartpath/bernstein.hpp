#pragma once

#include "smartpath/poly.hpp"

#include <functional>
#include <map>
#include <tuple>
#include <utility>
#include <vector>

namespace smartpath {

using Interval = std::pair<double, double>;
using IntervalSet = std::vector<Interval>;

bool contains(const IntervalSet& s, double x);

struct FunctionOracle {
    std::function<double(double)> eval;
    // derivative of the given order, valid on smooth_set
    std::function<double(int, double)> derivative_eval;
    double a = 0.0, b = 1.0;
    IntervalSet smooth_set;  // open intervals, closed ends allowed at a and b

    double operator()(double x) const { return eval(x); }
    bool smooth_at(double x) const;
};

// Oracle for a polynomial on [a, b], smooth everywhere.
FunctionOracle polynomial_oracle(const Polynomial& p, double a = 0.0, double b = 1.0);
// |x - c| on [0, 1]
FunctionOracle abs_oracle(double c);

struct DerivativeNorms {
    std::map<int, double> norms;
    IntervalSet K;
    double at(int order) const;
};

// Grid estimate of sup_K |f^(k)| for the listed orders.
DerivativeNorms derivative_norms(const FunctionOracle& f, const IntervalSet& K, int max_order,
                                 int grid = 2001);

// B_k,nu(x) = C(nu,k) x^k (1-x)^(nu-k), evaluated stably
double bernstein_basis(int nu, int k, double x);
std::vector<double> bernstein_basis_all(int nu, double x);

std::vector<double> bernstein_samples(const FunctionOracle& f, int nu);
BernsteinPolynomial bernstein_form(const FunctionOracle& f, int nu);
Polynomial bernstein_poly(const FunctionOracle& f, int nu);
Polynomial bernstein_poly(const FunctionOracle& f, int nu, double a, double b);
double bernstein_eval(const FunctionOracle& f, int nu, double x);
double bernstein_derivative_direct(const FunctionOracle& f, int nu, int k, double x);

double divided_difference(std::vector<double> nodes, const FunctionOracle& f);
double bnu_st(const FunctionOracle& f, int nu, int s, int t, double x);

double binomial_moment(int nu, double x, int m);
double tail_sum(int nu, double x, double delta);

// T_m(x) = sum_k (k - nu x)^m B_k,nu(x) written as sum_j nu^j c_j(x)
std::vector<Polynomial> central_moment_polynomials(int m);
double moment_constant(int m);           // A_m: T_2m <= A_m nu^m
double tail_constant(double delta, int m);  // C(delta, m): tail <= C / nu^m

using QTable = std::map<std::pair<int, int>, Polynomial>;
QTable q_polynomials(int l);

double smooth_error_bound(int l, int nu, double x, const DerivativeNorms& norms);

struct CompactBoundConstants {
    double C_f_K_l = 0.0;
    double N_f_K = 0.0;
    std::map<int, double> A;
    std::map<std::tuple<int, int, int>, Polynomial> q_table;
    std::map<std::pair<double, int>, double> tail_C;
    std::map<int, double> M_f_K;
    std::map<int, double> L;
};

struct CompactOptions {
    double inflation = -1.0;  // default: half the distance from K to the boundary of Omega
    int grid = 101;
    double safety = 1.1;
};

double distance_to_nonsmooth(const FunctionOracle& f, const IntervalSet& K);
double remainder_bound(const FunctionOracle& f, const IntervalSet& K, int l,
                       const CompactOptions& opt = {});
CompactBoundConstants compact_constants(const FunctionOracle& f, const IntervalSet& K, int l,
                                        const CompactOptions& opt = {});
// Pointwise remainder weight (1/(x(1-x))^l) sum |q_ijl(x)| N A_{i+j+2}; infinite at 0, 1 when l > 0
double compact_remainder_weight(const CompactBoundConstants& c, int l, double x);
double compact_error_bound(const FunctionOracle& f, int l, int nu, double x, const DerivativeNorms& norms,
                           const CompactBoundConstants& consts);

struct ComparisonGap {
    double measured = 0.0;
    double bound = 0.0;
    double M_K_l = 0.0;
};

ComparisonGap comparison_gap(const FunctionOracle& f1, const FunctionOracle& f2, int l, int nu,
                             const IntervalSet& K, const IntervalSet& omega, int grid = 201);

}  // namespace smartpath
