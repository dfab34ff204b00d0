#include "smartpath/bernstein.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace smartpath {

namespace {

double factorial(int n) {
    double r = 1.0;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

double falling(int n, int k) {
    double r = 1.0;
    for (int i = 0; i < k; ++i) r *= (n - i);
    return r;
}

double decasteljau(std::vector<double> w, double u) {
    int n = static_cast<int>(w.size()) - 1;
    for (int r = 1; r <= n; ++r)
        for (int k = 0; k <= n - r; ++k) w[k] = (1.0 - u) * w[k] + u * w[k + 1];
    return w[0];
}

double sup_on(const Polynomial& p, const IntervalSet& K, int grid) {
    double m = 0.0;
    for (const auto& [lo, hi] : K)
        for (int i = 0; i < grid; ++i) {
            double x = lo + (hi - lo) * i / (grid - 1);
            m = std::max(m, std::abs(p(x)));
        }
    return m;
}

std::vector<double> grid_points(const IntervalSet& K, int per_interval) {
    std::vector<double> xs;
    for (const auto& [lo, hi] : K)
        for (int i = 0; i < per_interval; ++i)
            xs.push_back(per_interval == 1 ? lo : lo + (hi - lo) * i / (per_interval - 1));
    return xs;
}

}  // namespace

bool contains(const IntervalSet& s, double x) {
    for (const auto& [lo, hi] : s)
        if (x >= lo && x <= hi) return true;
    return false;
}

bool FunctionOracle::smooth_at(double x) const {
    if (!derivative_eval) return false;
    for (const auto& [lo, hi] : smooth_set) {
        bool left_ok = (x > lo) || (x == lo && lo == a);
        bool right_ok = (x < hi) || (x == hi && hi == b);
        if (left_ok && right_ok) return true;
    }
    return false;
}

FunctionOracle polynomial_oracle(const Polynomial& p, double a, double b) {
    FunctionOracle f;
    f.eval = [p](double x) { return p(x); };
    f.derivative_eval = [p](int k, double x) { return derivative(p, k)(x); };
    f.a = a;
    f.b = b;
    f.smooth_set = {{a, b}};
    return f;
}

FunctionOracle abs_oracle(double c) {
    FunctionOracle f;
    f.eval = [c](double x) { return std::abs(x - c); };
    f.derivative_eval = [c](int k, double x) {
        if (k == 0) return std::abs(x - c);
        if (k == 1) return x > c ? 1.0 : -1.0;
        return 0.0;
    };
    f.smooth_set = {{0.0, c}, {c, 1.0}};
    return f;
}

double DerivativeNorms::at(int order) const {
    auto it = norms.find(order);
    if (it == norms.end()) throw std::invalid_argument("missing derivative norm of order " + std::to_string(order));
    return it->second;
}

DerivativeNorms derivative_norms(const FunctionOracle& f, const IntervalSet& K, int max_order, int grid) {
    DerivativeNorms dn;
    dn.K = K;
    for (int k = 0; k <= max_order; ++k) {
        double m = 0.0;
        for (double x : grid_points(K, grid)) {
            if (!f.smooth_at(x)) throw std::invalid_argument("derivative_norms: K leaves the smooth set");
            m = std::max(m, std::abs(f.derivative_eval(k, x)));
        }
        dn.norms[k] = m;
    }
    return dn;
}

double bernstein_basis(int nu, int k, double x) {
    if (k < 0 || k > nu) return 0.0;
    if (x <= 0.0) return k == 0 ? 1.0 : 0.0;
    if (x >= 1.0) return k == nu ? 1.0 : 0.0;
    double lg = std::lgamma(nu + 1.0) - std::lgamma(k + 1.0) - std::lgamma(nu - k + 1.0);
    return std::exp(lg + k * std::log(x) + (nu - k) * std::log1p(-x));
}

std::vector<double> bernstein_basis_all(int nu, double x) {
    std::vector<double> w(nu + 1, 0.0);
    if (x <= 0.0) {
        w[0] = 1.0;
        return w;
    }
    if (x >= 1.0) {
        w[nu] = 1.0;
        return w;
    }
    int mode = std::clamp(static_cast<int>(std::floor((nu + 1) * x)), 0, nu);
    w[mode] = bernstein_basis(nu, mode, x);
    double r = x / (1.0 - x);
    for (int k = mode; k < nu; ++k) w[k + 1] = w[k] * r * (nu - k) / (k + 1.0);
    for (int k = mode; k > 0; --k) w[k - 1] = w[k] / r * k / (nu - k + 1.0);
    return w;
}

std::vector<double> bernstein_samples(const FunctionOracle& f, int nu) {
    if (nu < 1) throw std::invalid_argument("bernstein: nu must be positive");
    if (!(f.b > f.a)) throw std::invalid_argument("bernstein: empty interval");
    std::vector<double> s(nu + 1);
    for (int k = 0; k <= nu; ++k) s[k] = f(k == nu ? f.b : f.a + (f.b - f.a) * k / nu);
    return s;
}

BernsteinPolynomial bernstein_form(const FunctionOracle& f, int nu) {
    return BernsteinPolynomial(bernstein_samples(f, nu), f.a, f.b);
}

Polynomial bernstein_poly(const FunctionOracle& f, int nu) { return bernstein_form(f, nu).to_polynomial(); }

Polynomial bernstein_poly(const FunctionOracle& f, int nu, double a, double b) {
    FunctionOracle g = f;
    g.a = a;
    g.b = b;
    return bernstein_poly(g, nu);
}

double bernstein_eval(const FunctionOracle& f, int nu, double x) {
    return decasteljau(bernstein_samples(f, nu), (x - f.a) / (f.b - f.a));
}

double bernstein_derivative_direct(const FunctionOracle& f, int nu, int k, double x) {
    if (k < 0 || k > nu) throw std::invalid_argument("bernstein_derivative_direct: k out of range");
    std::vector<double> d = bernstein_samples(f, nu);
    for (int r = 0; r < k; ++r)
        for (int i = 0; i + 1 < static_cast<int>(d.size()) - r; ++i) d[i] = d[i + 1] - d[i];
    d.resize(nu - k + 1);
    double u = (x - f.a) / (f.b - f.a);
    return falling(nu, k) / std::pow(f.b - f.a, k) * decasteljau(d, u);
}

double divided_difference(std::vector<double> nodes, const FunctionOracle& f) {
    if (nodes.empty()) throw std::invalid_argument("divided_difference: no nodes");
    std::sort(nodes.begin(), nodes.end());
    int m = static_cast<int>(nodes.size());
    std::vector<double> col(m);
    for (int i = 0; i < m; ++i) col[i] = f(nodes[i]);
    for (int j = 1; j < m; ++j) {
        for (int i = 0; i + j < m; ++i) {
            double lo = nodes[i], hi = nodes[i + j];
            if (hi == lo) {
                if (!f.smooth_at(lo)) throw std::invalid_argument("divided_difference: repeated node outside smooth set");
                col[i] = f.derivative_eval(j, lo) / factorial(j);
            } else {
                col[i] = (col[i + 1] - col[i]) / (hi - lo);
            }
        }
    }
    return col[0];
}

double bnu_st(const FunctionOracle& f, int nu, int s, int t, double x) {
    if (s > nu) throw std::invalid_argument("bnu_st: s > nu");
    std::vector<double> w = bernstein_basis_all(nu - s, x);
    double acc = 0.0;
    for (int k = 0; k <= nu - s; ++k) {
        std::vector<double> nodes;
        for (int i = 0; i <= s; ++i) nodes.push_back(static_cast<double>(k + i) / nu);
        for (int i = 0; i < t; ++i) nodes.push_back(x);
        acc += divided_difference(nodes, f) * w[k];
    }
    return acc;
}

double binomial_moment(int nu, double x, int m) {
    std::vector<double> w = bernstein_basis_all(nu, x);
    double acc = 0.0;
    for (int k = 0; k <= nu; ++k) acc += std::pow(k - nu * x, m) * w[k];
    return acc;
}

double tail_sum(int nu, double x, double delta) {
    std::vector<double> w = bernstein_basis_all(nu, x);
    double acc = 0.0;
    for (int k = 0; k <= nu; ++k)
        if (std::abs(static_cast<double>(k) / nu - x) > delta) acc += w[k];
    return acc;
}

std::vector<Polynomial> central_moment_polynomials(int m) {
    // T[j] = coefficient of nu^j
    std::vector<Polynomial> prev, cur{Polynomial::constant(1.0)};
    const Polynomial xx = Polynomial({0.0, 1.0, -1.0});
    for (int step = 0; step < m; ++step) {
        std::vector<Polynomial> next(std::max(cur.size(), prev.size()) + 1);
        for (size_t j = 0; j < cur.size(); ++j) next[j] += xx * derivative(cur[j]);
        for (size_t j = 0; j < prev.size(); ++j) next[j + 1] += static_cast<double>(step) * (xx * prev[j]);
        while (!next.empty() && next.back().is_zero()) next.pop_back();
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

double moment_constant(int m) {
    std::vector<Polynomial> T = central_moment_polynomials(2 * m);
    double A = 0.0;
    for (const auto& c : T) A += sup_on(c, {{0.0, 1.0}}, 10001);
    return A * 1.01;
}

double tail_constant(double delta, int m) { return moment_constant(m) / std::pow(delta, 2 * m); }

QTable q_polynomials(int l) {
    QTable q;
    q[{0, 0}] = Polynomial::constant(1.0);
    const Polynomial xx = Polynomial({0.0, 1.0, -1.0});
    const Polynomial one_m2x = Polynomial({1.0, -2.0});
    for (int L = 0; L < l; ++L) {
        QTable nq;
        for (int i = 0; 2 * i <= L + 1; ++i)
            for (int j = 0; 2 * i + j <= L + 1; ++j) nq[{i, j}] = Polynomial();
        for (const auto& [key, p] : q) {
            auto [i, j] = key;
            nq[{i, j + 1}] += p;
            nq[{i, j}] += (-static_cast<double>(L)) * (one_m2x * p);
            nq[{i, j}] += xx * derivative(p);
            if (j > 0) nq[{i + 1, j - 1}] += (-static_cast<double>(j)) * (xx * p);
        }
        q = std::move(nq);
    }
    return q;
}

double smooth_error_bound(int l, int nu, double x, const DerivativeNorms& norms) {
    double t = x * (1.0 - x) * norms.at(l + 2);
    if (l > 0) t += l * std::abs(1.0 - 2.0 * x) * norms.at(l + 1);
    if (l > 1) t += l * (l - 1.0) * norms.at(l);
    return t / (2.0 * nu);
}

double distance_to_nonsmooth(const FunctionOracle& f, const IntervalSet& K) {
    std::vector<double> bad;
    for (const auto& [lo, hi] : f.smooth_set) {
        if (lo > f.a) bad.push_back(lo);
        if (hi < f.b) bad.push_back(hi);
    }
    double d = std::numeric_limits<double>::infinity();
    for (double p : bad)
        for (const auto& [lo, hi] : K) {
            if (p >= lo && p <= hi) return 0.0;
            d = std::min(d, std::min(std::abs(p - lo), std::abs(p - hi)));
        }
    return d;
}

double remainder_bound(const FunctionOracle& f, const IntervalSet& K, int l, const CompactOptions& opt) {
    int order = l + 4;
    double d = distance_to_nonsmooth(f, K);
    if (d <= 0.0) throw std::invalid_argument("compact set touches a non-smooth point");
    double r = opt.inflation > 0.0 ? opt.inflation : std::min(0.25, d / 2.0);
    IntervalSet Kpp;
    for (const auto& [lo, hi] : K) Kpp.push_back({std::max(f.a, lo - r), std::min(f.b, hi + r)});
    double n1 = 0.0;
    for (double z : grid_points(Kpp, 1001)) n1 = std::max(n1, std::abs(f.derivative_eval(order, z)));
    n1 /= factorial(order);
    double n2 = 0.0;
    for (double y : grid_points(K, opt.grid)) {
        std::vector<double> dy(order);
        for (int k = 0; k < order; ++k) dy[k] = f.derivative_eval(k, y) / factorial(k);
        for (int i = 0; i < opt.grid; ++i) {
            double x = f.a + (f.b - f.a) * i / (opt.grid - 1);
            if (std::abs(x - y) <= r) continue;
            double taylor = 0.0, p = 1.0;
            for (int k = 0; k < order; ++k, p *= (x - y)) taylor += dy[k] * p;
            n2 = std::max(n2, std::abs(f(x) - taylor) / std::pow(std::abs(x - y), order));
        }
    }
    return opt.safety * std::max(n1, n2);
}

CompactBoundConstants compact_constants(const FunctionOracle& f, const IntervalSet& K, int l,
                                        const CompactOptions& opt) {
    CompactBoundConstants c;
    c.N_f_K = remainder_bound(f, K, l, opt);
    QTable q = q_polynomials(l);
    for (const auto& [key, p] : q) {
        c.q_table[{key.first, key.second, l}] = p;
        int m = key.first + key.second + 2;
        if (!c.A.count(m)) c.A[m] = moment_constant(m);
    }
    double w = 0.0;
    for (double y : grid_points(K, 2001)) w = std::max(w, 1.0 / std::pow(y * (1.0 - y), l));
    double sum = 0.0;
    for (const auto& [key, p] : q) sum += sup_on(p, K, 2001) * c.N_f_K * c.A[key.first + key.second + 2];
    c.C_f_K_l = w * sum;
    double d = distance_to_nonsmooth(f, K);
    if (std::isfinite(d))
        for (const auto& [m, a] : c.A) c.tail_C[{d, m}] = a / std::pow(d, 2 * m);
    DerivativeNorms dn = derivative_norms(f, K, l + 3, 501);
    for (int lam = 0; lam <= l + 2; ++lam) {
        double s = 0.0;
        for (int k = lam; k <= l + 3; ++k) s += dn.at(k) / factorial(k - lam);
        c.M_f_K[lam] = s;
    }
    for (int m = 0; m <= l; ++m) c.L[m] = m * (std::pow(2.0, m) - 1.0);
    return c;
}

double compact_remainder_weight(const CompactBoundConstants& c, int l, double x) {
    double den = std::pow(x * (1.0 - x), l);
    if (den == 0.0) return std::numeric_limits<double>::infinity();
    double s = 0.0;
    for (const auto& [key, p] : c.q_table) {
        if (std::get<2>(key) != l) continue;
        s += std::abs(p(x)) * c.N_f_K * c.A.at(std::get<0>(key) + std::get<1>(key) + 2);
    }
    return s / den;
}

double compact_error_bound(const FunctionOracle& f, int l, int nu, double x, const DerivativeNorms& norms,
                           const CompactBoundConstants& consts) {
    (void)f;
    auto tail = [&](int from, int to, int shift) {
        double s = 0.0;
        for (int k = from; k <= to; ++k) s += norms.at(k) / factorial(k - shift);
        return s;
    };
    double t = x * (1.0 - x) * tail(l + 2, l + 3, l + 2);
    if (l > 0) t += l * std::abs(1.0 - 2.0 * x) * tail(l + 1, l + 3, l + 1);
    if (l > 1) t += l * (l - 1.0) * tail(l, l + 3, l);
    double nn = static_cast<double>(nu);
    return t / (2.0 * nn) + compact_remainder_weight(consts, l, x) / (nn * nn);
}

ComparisonGap comparison_gap(const FunctionOracle& f1, const FunctionOracle& f2, int l, int nu,
                             const IntervalSet& K, const IntervalSet& omega, int grid) {
    double delta = std::numeric_limits<double>::infinity();
    for (const auto& [klo, khi] : K) {
        bool inside = false;
        for (const auto& [olo, ohi] : omega) {
            bool lo_ok = klo > olo || (klo == olo && olo == 0.0);
            bool hi_ok = khi < ohi || (khi == ohi && ohi == 1.0);
            if (lo_ok && hi_ok) {
                inside = true;
                if (olo > 0.0) delta = std::min(delta, klo - olo);
                if (ohi < 1.0) delta = std::min(delta, ohi - khi);
            }
        }
        if (!inside) throw std::invalid_argument("comparison_gap: K not inside the common open set");
    }
    FunctionOracle diff;
    diff.eval = [&](double x) { return f1(x) - f2(x); };
    ComparisonGap g;
    for (double x : grid_points(K, grid))
        g.measured = std::max(g.measured, std::abs(bernstein_derivative_direct(diff, nu, l, x)));
    double sup = 0.0;
    for (int i = 0; i <= 20000; ++i) sup = std::max(sup, std::abs(diff(i / 20000.0)));
    for (int k = 0; k <= nu; ++k) sup = std::max(sup, std::abs(diff(static_cast<double>(k) / nu)));
    if (!std::isfinite(delta)) return g;
    QTable q = q_polynomials(l);
    double w = 0.0;
    for (double y : grid_points(K, 2001)) w = std::max(w, 1.0 / std::pow(y * (1.0 - y), l));
    double s = 0.0;
    for (const auto& [key, p] : q) s += sup_on(p, K, 2001) * tail_constant(delta, key.first + key.second + 2);
    g.M_K_l = w * s;
    g.bound = g.M_K_l * sup / (static_cast<double>(nu) * nu);
    return g;
}

}  // namespace smartpath
