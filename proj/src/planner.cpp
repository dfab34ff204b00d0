#include "smartpath/planner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace smartpath {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double factorial(int n) {
    double r = 1.0;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

double falling(int e, int k) {
    double r = 1.0;
    for (int i = 0; i < k; ++i) r *= (e - i);
    return r;
}

Vec unit(int n, int d) {
    Vec v = Vec::Zero(n);
    v[d] = 1.0;
    return v;
}

// max_i min_j h_ij(x)
double union_margin(const std::vector<ConvexPolyhedron>& regions, const Vec& x) {
    double m = -kInf;
    for (const auto& K : regions) m = std::max(m, K.min_value(x));
    return m;
}

std::string fmt_time(double t) {
    std::ostringstream os;
    os.precision(6);
    os << t;
    return os.str();
}

// ---- guide quadratic program ----

struct Term {
    int e;
    int var;  // -1: constant
    Vec dir;
};

struct PieceSpec {
    double t0, t1, origin;
    int anchor;
    std::vector<Term> terms;
};

struct Fix {
    int var;
    double value;
};

struct GuideProblem {
    int n = 0;
    int nv = 0;
    std::vector<PieceSpec> pieces;
    std::vector<Eigen::RowVectorXd> rows;
    std::vector<double> rhs;
    std::vector<int> kappa_var, coef_var;  // per anchor, first variable or -1

    int add_vars(int k) {
        int v = nv;
        nv += k;
        return v;
    }
    void pad(Eigen::RowVectorXd& r) const {
        if (r.size() < nv) {
            Eigen::RowVectorXd z = Eigen::RowVectorXd::Zero(nv);
            z.head(r.size()) = r;
            r = z;
        }
    }
    // k-th derivative at t on piece p: M z + c
    void eval_rows(int p, int k, double t, Eigen::MatrixXd& M, Vec& c) const {
        const auto& ps = pieces[p];
        M = Eigen::MatrixXd::Zero(n, nv);
        c = Vec::Zero(n);
        double s = t - ps.origin;
        for (const auto& term : ps.terms) {
            if (term.e < k) continue;
            double f = falling(term.e, k) * std::pow(s, term.e - k);
            if (term.var < 0)
                c += f * term.dir;
            else
                M.col(term.var) += f * term.dir;
        }
    }
    void add_equation(const Eigen::MatrixXd& M, const Vec& c, const Vec& target) {
        for (int d = 0; d < M.rows(); ++d) {
            rows.push_back(M.row(d));
            rhs.push_back(target[d] - c[d]);
        }
    }
};

GuideProblem setup_problem(const ControlSchedule& sch, int n) {
    GuideProblem P;
    P.n = n;
    const int D = 5;
    auto connector = [&](double t0, double t1) {
        PieceSpec ps{t0, t1, t0, -1, {}};
        for (int e = 0; e <= D; ++e)
            for (int d = 0; d < n; ++d) ps.terms.push_back({e, P.add_vars(1), unit(n, d)});
        P.pieces.push_back(ps);
    };
    P.kappa_var.assign(sch.anchors.size(), -1);
    P.coef_var.assign(sch.anchors.size(), -1);
    double cur = 0.0;
    for (size_t a = 0; a < sch.anchors.size(); ++a) {
        const Anchor& A = sch.anchors[a];
        if (!A.windowed()) {
            connector(cur, A.time);
            cur = A.time;
            continue;
        }
        double w = A.half_width;
        connector(cur, A.time - w);
        PieceSpec ps{A.time - w, A.time + w, A.time, static_cast<int>(a), {}};
        ps.terms.push_back({0, -1, A.point});
        if (A.kind == AnchorKind::Graze) {
            int k = P.add_vars(1);
            P.kappa_var[a] = k;
            ps.terms.push_back({2, k, A.inward});
            for (int d = 0; d < n; ++d) ps.terms.push_back({1, P.add_vars(1), unit(n, d)});
            for (int d = 0; d < n; ++d) ps.terms.push_back({3, P.add_vars(1), unit(n, d)});
        } else {
            int c0 = P.add_vars(A.arc.d());
            P.coef_var[a] = c0;
            for (int l = 0; l < A.arc.d(); ++l)
                ps.terms.push_back({A.arc.exponents[l], c0 + l, A.arc.frame[l] * (A.arc.coefficients[l] > 0 ? 1.0 : -1.0)});
            int top = A.arc.degree() + 1;
            for (int d = 0; d < n; ++d) ps.terms.push_back({top, P.add_vars(1), unit(n, d)});
        }
        P.pieces.push_back(ps);
        cur = A.time + w;
    }
    connector(cur, 1.0);
    return P;
}

Vec solve_problem(GuideProblem& P, const ControlSchedule& sch, const std::vector<Fix>& fixes) {
    int n = P.n;
    P.rows.clear();
    P.rhs.clear();
    Eigen::MatrixXd M1, M2;
    Vec c1, c2;
    for (size_t p = 0; p + 1 < P.pieces.size(); ++p) {
        double t = P.pieces[p].t1;
        for (int k = 0; k <= 2; ++k) {
            P.eval_rows(static_cast<int>(p), k, t, M1, c1);
            P.eval_rows(static_cast<int>(p) + 1, k, t, M2, c2);
            P.add_equation(M1 - M2, c1 - c2, Vec::Zero(n));
        }
    }
    for (size_t p = 0; p < P.pieces.size(); ++p) {
        if (p == 0) continue;
        int a = -1;
        for (size_t k = 0; k < sch.anchors.size(); ++k)
            if (!sch.anchors[k].windowed() && std::abs(sch.anchors[k].time - P.pieces[p].t0) < 1e-15)
                a = static_cast<int>(k);
        if (a < 0) continue;
        P.eval_rows(static_cast<int>(p), 0, P.pieces[p].t0, M1, c1);
        P.add_equation(M1, c1, sch.anchors[a].point);
    }
    for (const auto& ps : P.pieces) {
        if (ps.anchor < 0) continue;
        const Anchor& A = sch.anchors[ps.anchor];
        if (A.kind != AnchorKind::Graze) continue;
        for (int j : A.active) {
            Eigen::RowVectorXd r = Eigen::RowVectorXd::Zero(P.nv);
            for (const auto& term : ps.terms)
                if (term.e == 1 && term.var >= 0) r[term.var] = A.left[j].gradient().dot(term.dir);
            P.rows.push_back(r);
            P.rhs.push_back(0.0);
        }
    }
    int last = static_cast<int>(P.pieces.size()) - 1;
    P.eval_rows(0, 0, 0.0, M1, c1);
    P.add_equation(M1, c1, sch.start);
    P.eval_rows(0, 1, 0.0, M1, c1);
    P.add_equation(M1, c1, Vec::Zero(n));
    P.eval_rows(last, 0, 1.0, M1, c1);
    P.add_equation(M1, c1, sch.end);
    P.eval_rows(last, 1, 1.0, M1, c1);
    P.add_equation(M1, c1, Vec::Zero(n));
    for (const auto& f : fixes) {
        Eigen::RowVectorXd r = Eigen::RowVectorXd::Zero(P.nv);
        r[f.var] = 1.0;
        P.rows.push_back(r);
        P.rhs.push_back(f.value);
    }

    // integral of |gamma''|^2, 12-point Gauss-Legendre per piece
    static const double gx[6] = {0.1252334085114689, 0.3678314989981802, 0.5873179542866175,
                                 0.7699026741943047, 0.9041172563704749, 0.9815606342467192};
    static const double gw[6] = {0.2491470458134028, 0.2334925365383548, 0.2031674267230659,
                                 0.1600783285433462, 0.1069393259953184, 0.0471753363865118};
    Eigen::MatrixXd Q = Eigen::MatrixXd::Zero(P.nv, P.nv);
    Vec q = Vec::Zero(P.nv);
    for (size_t p = 0; p < P.pieces.size(); ++p) {
        double t0 = P.pieces[p].t0, t1 = P.pieces[p].t1;
        for (int i = 0; i < 6; ++i)
            for (double sg : {-1.0, 1.0}) {
                double t = 0.5 * (t0 + t1) + 0.5 * (t1 - t0) * sg * gx[i];
                double wt = gw[i] * 0.5 * (t1 - t0);
                P.eval_rows(static_cast<int>(p), 2, t, M1, c1);
                Q += wt * M1.transpose() * M1;
                q += wt * M1.transpose() * c1;
            }
    }
    int m = static_cast<int>(P.rows.size());
    Eigen::MatrixXd KKT = Eigen::MatrixXd::Zero(P.nv + m, P.nv + m);
    KKT.topLeftCorner(P.nv, P.nv) = Q + 1e-12 * Eigen::MatrixXd::Identity(P.nv, P.nv);
    Vec rhs(P.nv + m);
    rhs.head(P.nv) = -q;
    for (int i = 0; i < m; ++i) {
        Eigen::RowVectorXd r = P.rows[i];
        P.pad(r);
        KKT.block(P.nv + i, 0, 1, P.nv) = r;
        KKT.block(0, P.nv + i, P.nv, 1) = r.transpose();
        rhs[P.nv + i] = P.rhs[i];
    }
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(KKT);
    Vec sol = cod.solve(rhs);
    return sol.head(P.nv);
}

GuidePath assemble(const GuideProblem& P, const Vec& z) {
    GuidePath g;
    int n = P.n;
    for (const auto& ps : P.pieces) {
        int deg = 0;
        for (const auto& t : ps.terms) deg = std::max(deg, t.e);
        std::vector<std::vector<double>> c(n, std::vector<double>(deg + 1, 0.0));
        for (const auto& t : ps.terms) {
            double f = t.var < 0 ? 1.0 : z[t.var];
            for (int d = 0; d < n; ++d) c[d][t.e] += f * t.dir[d];
        }
        std::vector<Polynomial> comps;
        for (auto& cc : c) comps.emplace_back(cc);
        GuidePiece gp;
        gp.t0 = ps.t0;
        gp.t1 = ps.t1;
        gp.origin = ps.origin;
        gp.anchor = ps.anchor;
        gp.poly = PolynomialPath(std::move(comps), ps.t0 - ps.origin, ps.t1 - ps.origin);
        g.pieces.push_back(std::move(gp));
    }
    return g;
}

// first violation of the guide against its declared regions, or NaN
double guide_violation(const GuidePath& g, const std::vector<ConvexPolyhedron>& regions, const ControlSchedule& sch) {
    const int N = 4000;
    for (int i = 0; i <= N; ++i) {
        double t = static_cast<double>(i) / N;
        Vec x = g(t);
        int p = g.piece_index(t);
        int a = g.pieces[p].anchor;
        if (a >= 0) {
            const Anchor& A = sch.anchors[a];
            if (std::abs(t - A.time) < 1e-12) continue;
            const ConvexPolyhedron& K = t < A.time ? A.left : A.right;
            if (!interior_contains(K, x)) return t;
        } else {
            bool at_anchor = false;
            for (const auto& A : sch.anchors)
                if (std::abs(t - A.time) < 1e-12 && (x - A.point).norm() < 1e-9) at_anchor = true;
            if (!at_anchor && !(union_margin(regions, x) > 0.0)) return t;
        }
    }
    // also probe near each anchor where the coarse grid is blind
    for (const auto& A : sch.anchors) {
        if (!A.windowed()) continue;
        for (int i = 1; i <= 200; ++i) {
            double s = A.half_width * std::pow(10.0, -6.0 * i / 200.0);
            if (!interior_contains(A.right, g(A.time + s))) return A.time + s;
            if (!interior_contains(A.left, g(A.time - s))) return A.time - s;
        }
    }
    return std::numeric_limits<double>::quiet_NaN();
}

// ---- exact certificate helpers ----

double coeff_tol(const BernsteinPolynomial& p) {
    double m = 0.0;
    for (double c : p.coeffs()) m = std::max(m, std::abs(c));
    return 1e-12 * std::max(1.0, m);
}

bool positive_coeffs(const BernsteinPolynomial& p, double tol) {
    for (double c : p.coeffs())
        if (!(c > tol)) return false;
    return true;
}

// proves p > 0 on its interval; on failure records where
bool prove_positive(const BernsteinPolynomial& p, double tol, int depth, double& where) {
    if (positive_coeffs(p, tol)) return true;
    const auto& b = p.coeffs();
    if (!(b.front() > 0.0)) {
        where = p.lo();
        return false;
    }
    if (!(b.back() > 0.0)) {
        where = p.hi();
        return false;
    }
    if (depth == 0) {
        where = 0.5 * (p.lo() + p.hi());
        return false;
    }
    auto [l, r] = p.split(0.5 * (p.lo() + p.hi()));
    return prove_positive(l, tol, depth - 1, where) && prove_positive(r, tol, depth - 1, where);
}

// every point of the interval lies in the interior of some region
bool prove_union(const std::vector<std::vector<BernsteinPolynomial>>& polys, const std::vector<double>& tols, int depth,
                 double& where) {
    for (size_t k = 0; k < polys.size(); ++k) {
        bool ok = true;
        for (const auto& p : polys[k])
            if (!positive_coeffs(p, tols[k])) {
                ok = false;
                break;
            }
        if (ok) return true;
    }
    double lo = polys.front().front().lo(), hi = polys.front().front().hi();
    if (depth == 0) {
        where = 0.5 * (lo + hi);
        return false;
    }
    double mid = 0.5 * (lo + hi);
    std::vector<std::vector<BernsteinPolynomial>> L(polys.size()), R(polys.size());
    for (size_t k = 0; k < polys.size(); ++k)
        for (const auto& p : polys[k]) {
            auto [a, b] = p.split(mid);
            L[k].push_back(std::move(a));
            R[k].push_back(std::move(b));
        }
    return prove_union(L, tols, depth - 1, where) && prove_union(R, tols, depth - 1, where);
}

// p(s) / s^v on the same interval, given b_0..b_{v-1} ~ 0
BernsteinPolynomial divide_by_power(const BernsteinPolynomial& p, int v) {
    int N = p.degree();
    std::vector<double> q(N - v + 1);
    for (int j = 0; j <= N - v; ++j) {
        double r = 1.0;
        for (int i = 0; i < v; ++i) r *= static_cast<double>(N - i) / (j + 1 + i);
        q[j] = p.coeffs()[j + v] * r;
    }
    return BernsteinPolynomial(std::move(q), p.lo(), p.hi());
}

BernsteinPolynomial reversed_poly(const BernsteinPolynomial& p) {
    std::vector<double> c(p.coeffs().rbegin(), p.coeffs().rend());
    return BernsteinPolynomial(std::move(c), 0.0, p.hi() - p.lo());
}

}  // namespace

std::string to_string(AnchorKind k) {
    switch (k) {
        case AnchorKind::Graze: return "graze";
        case AnchorKind::Interior: return "interior";
        case AnchorKind::Cuspidal: return "cuspidal";
        case AnchorKind::Moment: return "moment";
    }
    return "?";
}

std::vector<double> ControlSchedule::delta() const {
    std::vector<double> out;
    for (const auto& a : anchors)
        if (a.waypoint >= 0) out.push_back(a.half_width);
    return out;
}

std::vector<double> ControlSchedule::rho() const {
    std::vector<double> out;
    for (const auto& a : anchors)
        if (a.bridge >= 0) out.push_back(a.half_width);
    return out;
}

ControlSchedule make_schedule(const std::vector<ConvexPolyhedron>& regions, const RegionGraph& graph,
                              const std::vector<Waypoint>& waypoints, double window_fraction) {
    if (waypoints.empty()) throw PlanError("schedule", "no waypoints");
    ControlSchedule sch;
    sch.window_fraction = window_fraction;
    int n = regions.front().dim();
    for (size_t i = 0; i < waypoints.size(); ++i) {
        const auto& w = waypoints[i];
        if (w.region < 0 || w.region >= static_cast<int>(regions.size()))
            throw PlanError("schedule", "waypoint " + std::to_string(i) + " references a missing region");
        if (!(w.time > 0.0 && w.time < 1.0)) throw PlanError("schedule", "waypoint times must lie in (0, 1)");
        if (i > 0 && !(w.time > waypoints[i - 1].time))
            throw PlanError("schedule", "waypoint times must be strictly increasing");
        if (!closure_contains(regions[w.region], w.point))
            throw PlanError("schedule", "waypoint " + std::to_string(i) + " is outside its region");
        sch.waypoint_times.push_back(w.time);
        sch.waypoints.push_back(w.point);
        sch.waypoint_regions.push_back(w.region);
    }
    sch.region_sequence = {waypoints.front().region};
    for (size_t i = 0; i < waypoints.size(); ++i) {
        const auto& w = waypoints[i];
        Anchor A;
        A.time = w.time;
        A.point = w.point;
        A.left = A.right = regions[w.region];
        A.waypoint = static_cast<int>(i);
        A.active = active_constraints(A.left, w.point);
        A.kind = A.active.empty() ? AnchorKind::Interior : AnchorKind::Graze;
        A.jet_order = A.kind == AnchorKind::Graze ? 1 : 0;
        if (A.kind == AnchorKind::Graze) A.inward = (chebyshev_center(A.left).center - w.point).normalized();
        sch.anchors.push_back(A);
        if (i + 1 == waypoints.size()) break;
        const auto& nx = waypoints[i + 1];
        std::vector<int> seg;
        try {
            seg = route_through_regions(graph, {w.region, nx.region});
        } catch (const RoutingError& e) {
            throw PlanError("routing", e.what());
        }
        int nb = static_cast<int>(seg.size()) - 1;
        for (int k = 0; k < nb; ++k) {
            int a = seg[k], b = seg[k + 1];
            sch.region_sequence.push_back(b);
            auto br = graph.bridge(a, b);
            if (!br) throw PlanError("bridges", "no bridge between regions " + std::to_string(a) + " and " + std::to_string(b));
            double frac = static_cast<double>(k + 1) / (nb + 1);
            double s = w.time + frac * (nx.time - w.time);
            BridgeSpec B = *br;
            if (B.kind == BridgeKind::Cuspidal) {
                // slide the base point toward the straight line between the waypoints
                ConvexPolyhedron I = intersect(regions[a], regions[b]);
                ChebyshevBall cb = chebyshev_center(I);
                Vec m = w.point + frac * (nx.point - w.point);
                for (double lam : {1.0, 0.75, 0.5, 0.25, 0.0}) {
                    Vec q = cb.center + lam * (m - cb.center);
                    if (I.min_value(q) >= 0.25 * cb.radius) {
                        try {
                            BridgeSpec nb2 = synthesize_bridge(regions[a], regions[b], q);
                            nb2.left_region = a;
                            nb2.right_region = b;
                            B = nb2;
                        } catch (const std::exception&) {
                        }
                        break;
                    }
                }
            }
            B.left_region = a;
            B.right_region = b;
            Anchor C;
            C.time = s;
            C.point = B.base_point;
            C.left = regions[a];
            C.right = regions[b];
            C.bridge = static_cast<int>(sch.bridges.size());
            if (B.kind == BridgeKind::Moment) {
                C.kind = AnchorKind::Moment;
                C.arc = B.arc;
                int v = 0;
                for (int side = 0; side < 2; ++side) {
                    const ConvexPolyhedron& K = side ? C.right : C.left;
                    for (size_t j = 0; j < K.size(); ++j) {
                        LeadingTerm lt = one_sided_leading_term(compose_affine(K[j], B.arc.path()), 0.0,
                                                                side ? Side::Right : Side::Left);
                        if (lt.order != LeadingTerm::infinite) v = std::max(v, lt.order);
                    }
                }
                C.jet_order = std::max(0, v - 1);
            } else {
                ConvexPolyhedron I = intersect(regions[a], regions[b]);
                C.active = active_constraints(I, B.base_point);
                if (C.active.empty()) {
                    C.kind = AnchorKind::Cuspidal;
                    C.jet_order = -1;
                } else {
                    C.kind = AnchorKind::Graze;
                    C.left = C.right = I;
                    C.inward = (chebyshev_center(I).center - B.base_point).normalized();
                    C.jet_order = 1;
                }
            }
            sch.bridge_times.push_back(s);
            sch.base_points.push_back(B.base_point);
            sch.bridges.push_back(B);
            sch.anchors.push_back(C);
        }
    }
    for (size_t a = 0; a < sch.anchors.size(); ++a) {
        double prev = a == 0 ? sch.anchors[a].time : sch.anchors[a].time - sch.anchors[a - 1].time;
        double next = a + 1 == sch.anchors.size() ? 1.0 - sch.anchors[a].time
                                                  : sch.anchors[a + 1].time - sch.anchors[a].time;
        sch.anchors[a].half_width = sch.anchors[a].windowed() ? window_fraction * std::min(prev, next) : 0.0;
    }
    const Anchor& f = sch.anchors.front();
    const Anchor& l = sch.anchors.back();
    const ConvexPolyhedron& K0 = regions[waypoints.front().region];
    const ConvexPolyhedron& K1 = regions[waypoints.back().region];
    sch.start = f.point + 0.5 * (chebyshev_center(K0).center - f.point);
    sch.end = l.point + 0.5 * (chebyshev_center(K1).center - l.point);
    (void)n;
    return sch;
}

int GuidePath::piece_index(double t) const {
    int lo = 0, hi = static_cast<int>(pieces.size()) - 1;
    while (lo < hi) {
        int mid = (lo + hi + 1) / 2;
        if (pieces[mid].t0 <= t)
            lo = mid;
        else
            hi = mid - 1;
    }
    return lo;
}

Vec GuidePath::operator()(double t) const {
    const auto& p = pieces[piece_index(t)];
    return p.poly(t - p.origin);
}

Vec GuidePath::derivative(int k, double t) const {
    const auto& p = pieces[piece_index(t)];
    return p.poly.derivative(k)(t - p.origin);
}

double GuidePath::max_joint_gap() const {
    double g = 0.0;
    for (size_t i = 0; i + 1 < pieces.size(); ++i) {
        double t = pieces[i].t1;
        Vec a = pieces[i].poly(t - pieces[i].origin);
        Vec b = pieces[i + 1].poly(t - pieces[i + 1].origin);
        g = std::max(g, (a - b).norm());
    }
    return g;
}

GuidePath build_guide_path(const std::vector<ConvexPolyhedron>& regions, ControlSchedule& schedule) {
    int n = regions.front().dim();
    std::string last;
    for (int attempt = 0; attempt < 6; ++attempt) {
        GuideProblem P = setup_problem(schedule, n);
        std::vector<Fix> fixes;
        Vec z;
        for (int round = 0; round < 3; ++round) {
            z = solve_problem(P, schedule, fixes);
            bool changed = false;
            for (size_t a = 0; a < schedule.anchors.size(); ++a) {
                const Anchor& A = schedule.anchors[a];
                double R = std::max(chebyshev_center(A.left).radius, 0.0);
                if (A.kind == AnchorKind::Moment)
                    R = std::min(R, std::max(chebyshev_center(A.right).radius, 0.0));
                R = std::min(R, 1.0);
                double w = A.half_width;
                if (P.kappa_var[a] >= 0) {
                    double kmin = 0.1 * R / (w * w);
                    int v = P.kappa_var[a];
                    if (z[v] < kmin && std::none_of(fixes.begin(), fixes.end(), [&](const Fix& f) { return f.var == v; })) {
                        fixes.push_back({v, kmin});
                        changed = true;
                    }
                }
                if (P.coef_var[a] >= 0)
                    for (int l = 0; l < A.arc.d(); ++l) {
                        int v = P.coef_var[a] + l;
                        double cmin = 0.05 * R / std::pow(w, A.arc.exponents[l]);
                        if (z[v] < cmin &&
                            std::none_of(fixes.begin(), fixes.end(), [&](const Fix& f) { return f.var == v; })) {
                            fixes.push_back({v, cmin});
                            changed = true;
                        }
                    }
            }
            if (!changed) break;
        }
        GuidePath g = assemble(P, z);
        double bad = guide_violation(g, regions, schedule);
        if (std::isnan(bad)) return g;
        last = fmt_time(bad);
        for (auto& A : schedule.anchors) A.half_width *= 0.5;
        schedule.window_fraction *= 0.5;
    }
    throw PlanError("guide", "guide path leaves the regions near t = " + last);
}

ErrorBudget compute_error_budget(const GuidePath& guide, const std::vector<ConvexPolyhedron>& regions,
                                 const ControlSchedule& schedule) {
    ErrorBudget b;
    b.n = guide.dim();
    b.r = static_cast<int>(schedule.waypoints.size());
    b.eps = kInf;
    const int N = 2000;
    double worst_t = 0.0;
    for (int i = 0; i <= N; ++i) {
        double t = static_cast<double>(i) / N;
        bool in_window = false;
        for (const auto& A : schedule.anchors)
            if (A.windowed() && std::abs(t - A.time) < A.half_width) in_window = true;
        bool at_anchor = false;
        for (const auto& A : schedule.anchors)
            if (!A.windowed() && std::abs(t - A.time) < 1e-12) at_anchor = true;
        if (in_window || at_anchor) continue;
        double m = union_margin(regions, guide(t));
        if (m < b.eps) {
            b.eps = m;
            worst_t = t;
        }
    }
    for (const auto& A : schedule.anchors) {
        if (!A.windowed()) continue;
        b.eps = std::min(b.eps, A.left.min_value(guide(A.time - A.half_width)));
        b.eps = std::min(b.eps, A.right.min_value(guide(A.time + A.half_width)));
    }
    if (!(b.eps > 0.0)) throw PlanError("budget", "zero clearance on the guide near t = " + fmt_time(worst_t));
    double mu_min = kInf;
    for (size_t a = 0; a < schedule.anchors.size(); ++a) {
        const Anchor& A = schedule.anchors[a];
        if (!A.windowed()) continue;
        const GuidePiece& piece = guide.pieces[guide.piece_index(A.time)];
        for (int side = 0; side < 2; ++side) {
            const ConvexPolyhedron& K = side ? A.right : A.left;
            for (size_t j = 0; j < K.size(); ++j) {
                Polynomial hp = compose_affine(K[j], piece.poly);
                LeadingTerm lt = one_sided_leading_term(hp, 0.0, side ? Side::Right : Side::Left);
                if (lt.order == 0 || lt.order == LeadingTerm::infinite) continue;
                MuEntry e;
                e.anchor = static_cast<int>(a);
                e.right_side = side == 1;
                e.constraint = static_cast<int>(j);
                e.order = lt.order;
                e.value = std::abs(derivative(hp, lt.order)(0.0));
                if (!(e.value > 0.0)) throw PlanError("budget", "vanishing leading derivative at anchor " + std::to_string(a));
                b.mu.push_back(e);
                b.l = std::max(b.l, e.order);
                mu_min = std::min(mu_min, e.value);
            }
        }
    }
    b.eps_prime = std::min(b.eps, mu_min);
    for (const auto& A : schedule.anchors)
        if (A.interpolated()) {
            b.jet_orders.push_back(A.jet_order);
            b.l = std::max(b.l, A.jet_order);
        }
    if (b.l > b.n + 1) throw PlanError("budget", "jet order exceeds n + 1");
    return b;
}

void attach_analytic_constants(ErrorBudget& budget, const GuidePath& guide, const ControlSchedule& schedule) {
    IntervalSet K;
    for (const auto& A : schedule.anchors)
        if (A.windowed()) K.push_back({A.time - 0.5 * A.half_width, A.time + 0.5 * A.half_width});
    if (K.empty()) return;
    IntervalSet smooth;
    for (const auto& p : guide.pieces) smooth.push_back({p.t0, p.t1});
    AnalyticConstants ac;
    int l = std::max(budget.l, 0);
    for (int c = 0; c < guide.dim(); ++c) {
        FunctionOracle f;
        f.eval = [&guide, c](double t) { return guide(t)[c]; };
        f.derivative_eval = [&guide, c](int k, double t) { return guide.derivative(k, t)[c]; };
        f.smooth_set = smooth;
        CompactBoundConstants cc = compact_constants(f, K, l);
        ac.C = std::max(ac.C, cc.C_f_K_l);
    }
    for (const auto& A : schedule.anchors) {
        if (!A.interpolated()) continue;
        const GuidePiece& piece = guide.pieces[guide.piece_index(A.time)];
        int e = A.jet_order;
        double norm = 0.0;
        for (int i = 0; i <= 200; ++i) {
            double s = piece.poly.lo() + (piece.poly.hi() - piece.poly.lo()) * i / 200.0;
            norm = std::max(norm, piece.poly.derivative(e)(s).norm());
        }
        if (A.waypoint >= 0) {
            ac.Ci.push_back(ac.C);
            ac.Li.push_back(ac.C);
            ac.e.push_back(e);
            ac.beta_norm.push_back(norm);
        } else {
            ac.d.push_back(e);
            ac.lambda_norm.push_back(norm);
        }
    }
    budget.analytic = ac;
}

int hermite_floor(int n, int r) { return n + 1 + (r - 1) * (n + 2) * (n + 2); }

int analytic_degree(const ErrorBudget& b) {
    if (!b.analytic) throw PlanError("degree", "analytic constants missing");
    if (!(b.eps_prime > 0.0)) throw PlanError("degree", "eps' must be positive");
    const AnalyticConstants& a = *b.analytic;
    double se = std::sqrt(b.eps_prime);
    double m = std::sqrt(a.C) / se;
    for (double c : a.Ci) m = std::max(m, std::sqrt(2.0 * c) / se);
    for (double c : a.Li) m = std::max(m, std::sqrt(2.0 * c) / se);
    for (size_t i = 0; i < a.e.size(); ++i) m = std::max(m, a.e[i] * (a.e[i] - 1.0) * a.beta_norm[i] / b.eps_prime);
    for (size_t i = 0; i < a.d.size(); ++i) m = std::max(m, a.d[i] * (a.d[i] - 1.0) * a.lambda_norm[i] / b.eps_prime);
    if (!std::isfinite(m) || m > 1e9) throw PlanError("degree", "analytic degree is not finite");
    double c = std::ceil(m * (1.0 - 1e-12));
    int nu0 = static_cast<int>(c) + 1;
    return std::max(hermite_floor(b.n, b.r), nu0);
}

int estimate_degree(const ErrorBudget& budget, DegreeMode mode, int nu_cap, const std::function<bool(int)>& probe,
                    int nu_start) {
    int floor = hermite_floor(budget.n, budget.r);
    if (mode == DegreeMode::Analytic) return analytic_degree(budget);
    if (!probe) throw PlanError("degree", "adaptive mode needs a certification probe");
    int last = -1;
    for (int nu = std::max(nu_start, 1); nu <= nu_cap; nu *= 2) {
        int v = std::max(nu, floor);
        if (v == last) continue;
        last = v;
        if (probe(v)) return v;
    }
    throw PlanError("degree", "no certified degree up to the cap " + std::to_string(nu_cap));
}

BernsteinPath smooth_path(const GuidePath& guide, const ControlSchedule& schedule, const ErrorBudget& budget, int nu,
                          CorrectionBasis basis) {
    (void)budget;
    HermiteSetup setup;
    for (const auto& A : schedule.anchors)
        if (A.interpolated()) {
            setup.times.push_back(A.time);
            setup.orders.push_back(A.jet_order);
            setup.l = std::max(setup.l, A.jet_order);
        }
    int r = setup.r();
    auto oracle = [&guide](int c) {
        FunctionOracle f;
        f.eval = [&guide, c](double t) { return guide(t)[c]; };
        f.derivative_eval = [&guide, c](int k, double t) { return guide.derivative(k, t)[c]; };
        return f;
    };
    std::vector<BernsteinPolynomial> comps;
    if (basis == CorrectionBasis::Hermite || r == 0) {
        for (int c = 0; c < guide.dim(); ++c) {
            FunctionOracle f = oracle(c);
            if (r == 0) {
                comps.push_back(bernstein_form(f, nu));
                continue;
            }
            std::vector<std::vector<double>> jets(r);
            for (int i = 0; i < r; ++i)
                for (int k = 0; k <= setup.order(i); ++k) jets[i].push_back(guide.derivative(k, setup.times[i])[c]);
            comps.push_back(interpolating_correction(f, setup, nu, jets));
        }
    } else {
        // bumps (t - t_i)^k / k! (1 - u^2)^4, u = (t - t_i) / w_i
        std::vector<std::pair<int, int>> idx;
        for (int i = 0; i < r; ++i)
            for (int k = 0; k <= setup.order(i); ++k) idx.emplace_back(i, k);
        int m = static_cast<int>(idx.size());
        std::vector<double> width(r);
        for (int i = 0; i < r; ++i) {
            double t = setup.times[i];
            double g = std::min(t, 1.0 - t);
            if (i > 0) g = std::min(g, t - setup.times[i - 1]);
            if (i + 1 < r) g = std::min(g, setup.times[i + 1] - t);
            width[i] = 0.9 * g;
        }
        std::vector<BernsteinPolynomial> phi;
        for (const auto& [i, k] : idx) {
            double ti = setup.times[i], w = width[i];
            double fk = factorial(k);
            FunctionOracle f;
            f.eval = [ti, w, k, fk](double t) {
                double u = (t - ti) / w;
                if (std::abs(u) >= 1.0) return 0.0;
                return std::pow(t - ti, k) / fk * std::pow(1.0 - u * u, 4);
            };
            phi.push_back(bernstein_form(f, nu));
        }
        Eigen::MatrixXd G(m, m);
        for (int a = 0; a < m; ++a)
            for (int b = 0; b < m; ++b) G(a, b) = phi[b].derivative_at(idx[a].second, setup.times[idx[a].first]);
        Eigen::FullPivLU<Eigen::MatrixXd> lu(G);
        if (lu.rank() < m) return smooth_path(guide, schedule, budget, nu, CorrectionBasis::Hermite);
        for (int c = 0; c < guide.dim(); ++c) {
            BernsteinPolynomial B = bernstein_form(oracle(c), nu);
            Vec rhs(m);
            for (int a = 0; a < m; ++a) {
                double t = setup.times[idx[a].first];
                int k = idx[a].second;
                rhs[a] = guide.derivative(k, t)[c] - B.derivative_at(k, t);
            }
            Vec x = lu.solve(rhs);
            for (int b = 0; b < m; ++b) {
                BernsteinPolynomial term = phi[b];
                term *= x[b];
                B += term;
            }
            comps.push_back(B);
        }
    }
    int deg = 0;
    for (const auto& p : comps) deg = std::max(deg, p.degree());
    for (auto& p : comps) p = p.elevate(deg);
    return BernsteinPath(std::move(comps));
}

std::vector<Vec> sample_path(const BernsteinPath& path, const std::vector<double>& ts) {
    int N = path.degree();
    std::vector<Vec> out;
    out.reserve(ts.size());
    for (double t : ts) {
        double x = (t - path.lo()) / (path.hi() - path.lo());
        std::vector<double> w = bernstein_basis_all(N, x);
        Vec v = Vec::Zero(path.dim());
        for (int c = 0; c < path.dim(); ++c) {
            const auto& b = path[c].coeffs();
            double s = 0.0;
            for (int k = 0; k <= N; ++k) s += w[k] * b[k];
            v[c] = s;
        }
        out.push_back(v);
    }
    return out;
}

CertReport certify_path(const BernsteinPath& alpha, const GuidePath& guide, const std::vector<ConvexPolyhedron>& regions,
                        const ControlSchedule& schedule, const ErrorBudget& budget, const CertOptions& opt) {
    CertReport rep;
    auto add = [&](CertCheck c) {
        rep.checks.push_back(c);
        if (!c.pass && !c.informational && rep.failure.empty()) rep.failure = c.name + " " + c.detail;
    };

    // jets and waypoint hits
    rep.jets = true;
    for (const auto& A : schedule.anchors) {
        if (!A.interpolated()) continue;
        for (int k = 0; k <= A.jet_order; ++k) {
            Vec ga = guide.derivative(k, A.time);
            Vec aa = alpha.derivative_at(k, A.time);
            double res = (aa - ga).norm() / std::max(1.0, ga.norm());
            rep.max_jet_residual = std::max(rep.max_jet_residual, res);
        }
        if (A.waypoint >= 0)
            rep.max_waypoint_residual = std::max(rep.max_waypoint_residual, (alpha(A.time) - A.point).norm());
    }
    rep.jets = rep.max_jet_residual <= 1e-8;
    add({"jets", rep.jets, false, rep.max_jet_residual, 1e-8, "jet equality at interpolation times"});

    // dense sampling
    std::vector<double> ts;
    for (int i = 0; i <= opt.samples; ++i) ts.push_back(static_cast<double>(i) / opt.samples);
    std::vector<Vec> xs = sample_path(alpha, ts);
    double first_bad = -1.0;
    for (size_t i = 0; i < ts.size(); ++i) {
        if (union_margin(regions, xs[i]) > 0.0) continue;
        bool ok = false;
        for (const auto& A : schedule.anchors)
            if (std::abs(ts[i] - A.time) < 1e-12 && (xs[i] - A.point).norm() <= 1e-9) ok = true;
        if (ok) continue;
        if (rep.sample_violations == 0) first_bad = ts[i];
        ++rep.sample_violations;
    }
    rep.sampling = rep.sample_violations == 0;
    add({"sampling", rep.sampling, false, static_cast<double>(rep.sample_violations), 0.0,
         rep.sampling ? std::to_string(opt.samples + 1) + " samples inside"
                      : "first violation at t = " + fmt_time(first_bad)});

    // exact Bernstein certificate
    if (opt.exact) {
        rep.exact = true;
        std::vector<std::vector<BernsteinPolynomial>> comp(regions.size());
        for (size_t k = 0; k < regions.size(); ++k)
            for (const auto& h : regions[k].constraints()) comp[k].push_back(compose_affine(h, alpha));
        std::vector<Interval> outside;
        double cur = 0.0;
        for (const auto& A : schedule.anchors) {
            if (!A.windowed()) continue;
            outside.push_back({cur, A.time - A.half_width});
            cur = A.time + A.half_width;
        }
        outside.push_back({cur, 1.0});
        for (const auto& [lo, hi] : outside) {
            if (!(hi > lo)) continue;
            std::vector<std::vector<BernsteinPolynomial>> polys(regions.size());
            std::vector<double> tols;
            for (size_t k = 0; k < regions.size(); ++k) {
                double tol = 0.0;
                for (const auto& p : comp[k]) {
                    polys[k].push_back(p.restrict(lo, hi));
                    tol = std::max(tol, coeff_tol(p));
                }
                tols.push_back(tol);
            }
            double where = 0.0;
            bool ok = prove_union(polys, tols, opt.max_depth, where);
            if (!ok) rep.exact = false;
            add({"union[" + fmt_time(lo) + "," + fmt_time(hi) + "]", ok, false, where, 0.0,
                 ok ? "certified by subdivision" : "not certified near t = " + fmt_time(where)});
        }
        for (size_t a = 0; a < schedule.anchors.size(); ++a) {
            const Anchor& A = schedule.anchors[a];
            if (!A.windowed()) continue;
            const GuidePiece& piece = guide.pieces[guide.piece_index(A.time)];
            bool ok = true;
            double where = A.time;
            std::string why;
            for (int side = 0; side < 2 && ok; ++side) {
                const ConvexPolyhedron& K = side ? A.right : A.left;
                for (size_t j = 0; j < K.size() && ok; ++j) {
                    LeadingTerm lt = one_sided_leading_term(compose_affine(K[j], piece.poly), 0.0,
                                                            side ? Side::Right : Side::Left);
                    if (lt.order == LeadingTerm::infinite || lt.sign <= 0) {
                        ok = false;
                        why = "guide leading term";
                        break;
                    }
                    BernsteinPolynomial hp = compose_affine(K[j], alpha);
                    double tol = coeff_tol(hp);
                    BernsteinPolynomial p = side ? hp.restrict(A.time, A.time + A.half_width)
                                                 : reversed_poly(hp.restrict(A.time - A.half_width, A.time));
                    if (side) p = BernsteinPolynomial(p.coeffs(), 0.0, A.half_width);
                    int v = lt.order;
                    double scale = 0.0;
                    for (double c : p.coeffs()) scale = std::max(scale, std::abs(c));
                    for (int k = 0; k < v; ++k)
                        if (std::abs(p.coeffs()[k]) > 1e-9 * std::max(1.0, scale)) {
                            ok = false;
                            why = "jet residual";
                        }
                    if (!ok) break;
                    BernsteinPolynomial q = v > 0 ? divide_by_power(p, v) : p;
                    double w2 = 0.0;
                    if (!prove_positive(q, v > 0 ? 0.0 : tol, opt.max_depth, w2)) {
                        ok = false;
                        where = side ? A.time + w2 : A.time - w2;
                        why = "constraint " + std::to_string(j) + (side ? " right" : " left");
                    }
                }
            }
            if (!ok) rep.exact = false;
            add({"window[" + to_string(A.kind) + "@" + fmt_time(A.time) + "]", ok, false, where, A.half_width,
                 ok ? "certified with valuation division" : why + " near t = " + fmt_time(where)});
        }
    }

    // analytic margins, informational
    {
        double gap0 = 0.0;
        const int N = 2000;
        for (int i = 0; i <= N; ++i) {
            double t = static_cast<double>(i) / N;
            bool in_window = false;
            for (const auto& A : schedule.anchors)
                if (A.windowed() && std::abs(t - A.time) < A.half_width) in_window = true;
            if (!in_window) gap0 = std::max(gap0, (alpha(t) - guide(t)).norm());
        }
        add({"condition0", gap0 < budget.eps, true, gap0, budget.eps, "sup |alpha - gamma| outside windows"});
        for (const auto& mu : budget.mu) {
            const Anchor& A = schedule.anchors[mu.anchor];
            const ConvexPolyhedron& K = mu.right_side ? A.right : A.left;
            const AffineFunctional& h = K[mu.constraint];
            double gap = 0.0;
            for (int i = 0; i <= 100; ++i) {
                double s = A.half_width * i / 100.0;
                double t = mu.right_side ? A.time + s : A.time - s;
                double da = h.linear(alpha.derivative_at(mu.order, t));
                double dg = h.linear(guide.derivative(mu.order, t));
                gap = std::max(gap, std::abs(da - dg));
            }
            add({"condition_mu@" + fmt_time(A.time), gap < mu.value, true, gap, mu.value,
                 "derivative gap of order " + std::to_string(mu.order)});
        }
    }
    rep.all_pass = rep.jets && rep.sampling && (rep.exact || !opt.exact);
    return rep;
}

PlanResult plan(const std::vector<ConvexPolyhedron>& regions, const std::vector<Waypoint>& waypoints,
                const PlanOptions& opt) {
    if (regions.empty()) throw PlanError("scene", "no regions");
    PlanResult res;
    try {
        res.graph = build_region_graph(regions, opt.hints);
    } catch (const std::invalid_argument& e) {
        throw PlanError("bridges", e.what());
    }
    res.schedule = make_schedule(regions, res.graph, waypoints, opt.window_fraction);
    res.guide = build_guide_path(regions, res.schedule);
    res.budget = compute_error_budget(res.guide, regions, res.schedule);
    CertOptions co;
    co.samples = opt.samples;
    co.max_depth = opt.max_depth;
    if (opt.mode == DegreeMode::Analytic) {
        attach_analytic_constants(res.budget, res.guide, res.schedule);
        int nu = std::min(estimate_degree(res.budget, DegreeMode::Analytic, opt.nu_cap), opt.nu_cap);
        nu = std::max(nu, hermite_floor(res.budget.n, res.budget.r));
        res.nu = nu;
        res.path = smooth_path(res.guide, res.schedule, res.budget, nu, opt.basis);
        res.cert = certify_path(res.path, res.guide, regions, res.schedule, res.budget, co);
        return res;
    }
    auto probe = [&](int nu) {
        BernsteinPath a = smooth_path(res.guide, res.schedule, res.budget, nu, opt.basis);
        CertOptions quick = co;
        quick.exact = false;
        CertReport r = certify_path(a, res.guide, regions, res.schedule, res.budget, quick);
        if (r.all_pass) r = certify_path(a, res.guide, regions, res.schedule, res.budget, co);
        res.nu = nu;
        res.path = std::move(a);
        res.cert = std::move(r);
        return res.cert.all_pass;
    };
    try {
        estimate_degree(res.budget, DegreeMode::Adaptive, opt.nu_cap, probe, opt.nu_start);
    } catch (const PlanError& e) {
        if (res.nu == 0) throw;
        // keep the last attempt; cert records the failure
    }
    return res;
}

}  // namespace smartpath
