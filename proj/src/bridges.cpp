#include "smartpath/bridges.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace smartpath {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// smallest positive root of hp + hu t^2 - |hw| t^3 when hp > 0 and hu <= 0
double case2_root(double hp, double hu, double hw) {
    auto phi = [&](double t) { return hp + hu * t * t - std::abs(hw) * t * t * t; };
    if (hu == 0.0 && hw == 0.0) return kInf;
    double hi = 1.0;
    while (phi(hi) > 0.0) hi *= 2.0;
    double lo = 0.0;
    for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (lo + hi);
        (phi(mid) > 0.0 ? lo : hi) = mid;
    }
    return lo;
}

bool independent(const std::vector<Vec>& vs) {
    if (vs.empty()) return true;
    Eigen::MatrixXd M(vs.front().size(), vs.size());
    for (size_t i = 0; i < vs.size(); ++i) M.col(i) = vs[i].normalized();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(M);
    return svd.singularValues().minCoeff() > 1e-9;
}

std::vector<Vec> orthonormal_complement(const std::vector<Vec>& basis, int n) {
    std::vector<Vec> q;
    for (const auto& b : basis) {
        Vec v = b;
        for (const auto& w : q) v -= w.dot(v) * w;
        if (v.norm() > 1e-10) q.push_back(v.normalized());
    }
    size_t start = q.size();
    for (int i = 0; i < n; ++i) {
        Vec v = Vec::Zero(n);
        v[i] = 1.0;
        for (const auto& w : q) v -= w.dot(v) * w;
        if (v.norm() > 1e-8) q.push_back(v.normalized());
    }
    return std::vector<Vec>(q.begin() + start, q.end());
}

// null space of the rows
std::vector<Vec> null_space(const std::vector<Vec>& rows, int n) {
    if (rows.empty()) {
        std::vector<Vec> e;
        for (int i = 0; i < n; ++i) {
            Vec v = Vec::Zero(n);
            v[i] = 1.0;
            e.push_back(v);
        }
        return e;
    }
    Eigen::MatrixXd A(rows.size(), n);
    for (size_t i = 0; i < rows.size(); ++i) A.row(i) = rows[i].transpose();
    Eigen::FullPivLU<Eigen::MatrixXd> lu(A);
    lu.setThreshold(1e-10);
    Eigen::MatrixXd N = lu.kernel();
    std::vector<Vec> out;
    if (lu.rank() == n) return out;
    for (int j = 0; j < N.cols(); ++j) out.push_back(N.col(j).normalized());
    return out;
}

bool sample_check(const ConvexPolyhedron& L, const ConvexPolyhedron& R, const MonomialArc& arc, double eps) {
    for (int i = 1; i <= 500; ++i) {
        double t = eps * i / 500.0;
        if (!interior_contains(R, arc(t))) return false;
        if (!interior_contains(L, arc(-t))) return false;
    }
    return true;
}

}  // namespace

std::string to_string(BridgeKind k) { return k == BridgeKind::Cuspidal ? "cuspidal" : "moment"; }

Vec MonomialArc::operator()(double t) const {
    Vec x = base;
    for (int l = 0; l < d(); ++l) x += coefficients[l] * std::pow(t, exponents[l]) * frame[l];
    return x;
}

PolynomialPath MonomialArc::path() const {
    int n = static_cast<int>(base.size());
    std::vector<Polynomial> comps;
    for (int i = 0; i < n; ++i) {
        Polynomial p = Polynomial::constant(base[i]);
        for (int l = 0; l < d(); ++l) p += Polynomial::monomial(exponents[l], coefficients[l] * frame[l][i]);
        comps.push_back(p);
    }
    return PolynomialPath(std::move(comps));
}

BridgeSpec cuspidal_arc(const ConvexPolyhedron& K, const Vec& p, const Vec& u, const Vec& w) {
    if (!closure_contains(K, p)) throw std::invalid_argument("cuspidal_arc: p is not in K");
    if (!interior_contains(K, p + u)) throw std::invalid_argument("cuspidal_arc: p + u is not interior");
    if (!independent({u, w})) throw std::invalid_argument("cuspidal_arc: u and w are dependent");
    double eps = kInf;
    for (const auto& h : K.constraints()) {
        double hp = std::max(h(p), 0.0), hu = h.linear(u), hw = h.linear(w);
        double e;
        if (hu > 0.0)
            e = hw == 0.0 ? kInf : hu / std::abs(hw);
        else
            e = case2_root(hp, hu, hw);
        eps = std::min(eps, e);
    }
    eps = std::isfinite(eps) ? 0.99 * eps : 1.0;
    BridgeSpec b;
    b.kind = BridgeKind::Cuspidal;
    b.arc.base = p;
    b.arc.frame = {u, w};
    b.arc.exponents = {2, 3};
    b.arc.coefficients = {1.0, 1.0};
    b.arc.epsilon = eps;
    b.base_point = p;
    b.degree = 3;
    ArcCertificate c = moment_arc_valid(K, K, b.arc);
    b.certified = c.valid && sample_check(K, K, b.arc, eps);
    return b;
}

ArcCertificate moment_arc_valid(const ConvexPolyhedron& K_left, const ConvexPolyhedron& K_right,
                                const MonomialArc& arc) {
    if (!closure_contains(K_left, arc.base) || !closure_contains(K_right, arc.base))
        throw std::invalid_argument("moment_arc_valid: base outside a closure");
    ArcCertificate cert;
    cert.valid = true;
    cert.epsilon = kInf;
    PolynomialPath path = arc.path();
    for (int side = 0; side < 2; ++side) {
        bool right = side == 0;
        const ConvexPolyhedron& K = right ? K_right : K_left;
        for (size_t j = 0; j < K.size(); ++j) {
            Polynomial q = compose_affine(K[j], path);
            LeadingTerm lt = one_sided_leading_term(q, 0.0, right ? Side::Right : Side::Left);
            ConstraintTerm term;
            term.right_side = right;
            term.constraint = static_cast<int>(j);
            term.order = lt.order;
            term.sign = lt.sign;
            term.coeff = lt.coeff;
            term.ok = lt.sign > 0;
            cert.terms.push_back(term);
            if (!term.ok) {
                cert.valid = false;
                continue;
            }
            Polynomial s = right ? q : reflect(q);
            double c0 = std::abs(lt.coeff), rest = 0.0;
            for (int i = lt.order + 1; i <= s.degree(); ++i) rest = std::max(rest, std::abs(s.coeff(i)));
            cert.epsilon = std::min(cert.epsilon, c0 / (c0 + rest));
        }
    }
    if (!cert.valid) {
        cert.epsilon = 0.0;
        return cert;
    }
    if (!std::isfinite(cert.epsilon)) cert.epsilon = 1.0;
    for (int i = 0; i < 40 && !sample_check(K_left, K_right, arc, cert.epsilon); ++i) cert.epsilon *= 0.5;
    return cert;
}

ReductionResult reduce_to_moment(const ConvexPolyhedron& K_left, const ConvexPolyhedron& K_right,
                                 const MonomialArc& input) {
    ArcCertificate c0 = moment_arc_valid(K_left, K_right, input);
    if (!c0.valid) throw std::invalid_argument("reduce_to_moment: input arc is not valid");
    ReductionResult res;
    MonomialArc arc = input;
    auto recert = [&](const MonomialArc& a) { return moment_arc_valid(K_left, K_right, a); };
    auto fail = [&](const std::string& step) {
        throw std::runtime_error("reduce_to_moment: re-certification failed at " + step);
    };
    int e = (arc.exponents[0] % 2) ? 1 : 2;
    int shift = arc.exponents[0] - e;
    if (shift != 0) {
        for (int& k : arc.exponents) k -= shift;
        ArcCertificate c = recert(arc);
        if (!c.valid) fail("step 1");
        arc.epsilon = c.epsilon;
        res.steps.push_back({"step 1: lower all exponents by " + std::to_string(shift), arc.exponents, 0.0});
    }
    size_t idx = 1;
    while (idx < arc.exponents.size()) {
        int prev = arc.exponents[idx - 1];
        int j = arc.exponents[idx] - prev;
        std::string name = "step " + std::to_string(idx + 1);
        if (j == 1) {
            ++idx;
            continue;
        }
        if (j % 2) {
            for (size_t l = idx; l < arc.exponents.size(); ++l) arc.exponents[l] -= (j - 1);
            ArcCertificate c = recert(arc);
            if (!c.valid) fail(name + " (case 2)");
            arc.epsilon = c.epsilon;
            res.steps.push_back({name + ": case 2, lower tail by " + std::to_string(j - 1), arc.exponents, 0.0});
            ++idx;
            continue;
        }
        bool done = false;
        double eta = 0.5;
        for (int attempt = 0; attempt <= 20 && !done; ++attempt, eta *= 0.5) {
            MonomialArc cand = arc;
            cand.frame[idx - 1] = arc.frame[idx - 1] + eta * arc.frame[idx];
            cand.frame.erase(cand.frame.begin() + idx);
            cand.exponents.erase(cand.exponents.begin() + idx);
            cand.coefficients.erase(cand.coefficients.begin() + idx);
            for (size_t l = idx; l < cand.exponents.size(); ++l) {
                cand.exponents[l] -= j;
                cand.coefficients[l] *= eta;
            }
            ArcCertificate c = recert(cand);
            if (c.valid) {
                cand.epsilon = c.epsilon;
                arc = cand;
                done = true;
                res.steps.push_back({name + ": case 1, merge axis", arc.exponents, eta});
            }
        }
        if (!done) fail(name + " (case 1)");
    }
    arc.epsilon = recert(arc).epsilon;
    res.arc = arc;
    return res;
}

BridgeSpec synthesize_bridge(const ConvexPolyhedron& K1, const ConvexPolyhedron& K2, const Vec& q,
                             const BridgeOptions& opt) {
    if (!closure_contains(K1, q) || !closure_contains(K2, q))
        throw std::invalid_argument("synthesize_bridge: base point not in both closures");
    int n = K1.dim();
    ConvexPolyhedron I = intersect(K1, K2);
    ChebyshevBall cb = chebyshev_center(I);
    if (cb.radius > 1e-9) {
        if (n < 2) throw std::invalid_argument("synthesize_bridge: cuspidal arcs need n >= 2");
        Vec u = cb.center - q;
        if (u.norm() < 1e-12) {
            u = Vec::Zero(n);
            u[0] = 0.5 * cb.radius;
        }
        std::vector<Vec> comp = orthonormal_complement({u}, n);
        Vec w = comp.front() * u.norm();
        BridgeSpec b = cuspidal_arc(I, q, u, w);
        return b;
    }
    Vec d1 = chebyshev_center(K1).center - q, d2 = chebyshev_center(K2).center - q;
    d1.normalize();
    d2.normalize();
    std::vector<Vec> act;
    for (const auto* K : {&K1, &K2})
        for (int j : active_constraints(*K, q)) act.push_back((*K)[j].gradient());
    std::vector<Vec> cands;
    auto add = [&](Vec v) {
        if (v.norm() < 1e-10) return;
        v.normalize();
        for (const auto& c : cands)
            if ((c - v).norm() < 1e-9) return;
        if (static_cast<int>(cands.size()) < opt.max_candidates) cands.push_back(v);
    };
    for (const auto& v : null_space(act, n)) {
        add(v);
        add(-v);
    }
    add(d2 - d1);
    add(d1 - d2);
    add(d1 + d2);
    add(-(d1 + d2));
    add(d2);
    add(-d1);
    for (int i = 0; i < n; ++i) {
        Vec e = Vec::Zero(n);
        e[i] = 1.0;
        add(e);
        add(-e);
    }
    int tried = 0;
    for (int d = 1; d <= n; ++d)
        for (int start : {1, 2})
            for (const auto& v1 : cands) {
                std::vector<Vec> comp = orthonormal_complement({v1}, n);
                std::vector<int> perm(comp.size());
                for (size_t i = 0; i < perm.size(); ++i) perm[i] = static_cast<int>(i);
                do {
                    for (int signs = 0; signs < (1 << (d - 1)); ++signs) {
                        MonomialArc arc;
                        arc.base = q;
                        arc.frame = {v1};
                        for (int l = 1; l < d; ++l)
                            arc.frame.push_back(((signs >> (l - 1)) & 1 ? -1.0 : 1.0) * comp[perm[l - 1]]);
                        for (int l = 0; l < d; ++l) {
                            arc.exponents.push_back(start + l);
                            arc.coefficients.push_back(1.0);
                        }
                        ++tried;
                        ArcCertificate c = moment_arc_valid(K1, K2, arc);
                        if (c.valid) {
                            arc.epsilon = c.epsilon;
                            BridgeSpec b;
                            b.kind = BridgeKind::Moment;
                            b.arc = arc;
                            b.base_point = q;
                            b.degree = arc.degree();
                            b.certified = true;
                            return b;
                        }
                    }
                } while (d > 1 && std::next_permutation(perm.begin(), perm.end()));
            }
    std::ostringstream os;
    os << "synthesize_bridge: moment search exhausted after " << tried << " candidates";
    throw std::runtime_error(os.str());
}

}  // namespace smartpath
