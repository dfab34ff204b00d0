#include "smartpath/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace smartpath {

ConvexPolyhedron::ConvexPolyhedron(std::vector<AffineFunctional> constraints, bool require_interior) {
    if (constraints.empty()) throw std::invalid_argument("polyhedron needs at least one constraint");
    n_ = constraints.front().dim();
    for (auto& h : constraints) {
        if (h.dim() != n_) throw std::invalid_argument("polyhedron: mixed dimensions");
        bool dup = false;
        for (const auto& g : h_)
            if ((g.gradient() - h.gradient()).norm() < 1e-12 && std::abs(g.offset() - h.offset()) < 1e-12) dup = true;
        if (!dup) h_.push_back(std::move(h));
    }
    if (require_interior && !(chebyshev_center(*this).radius > 1e-12))
        throw std::invalid_argument("polyhedron has empty interior");
}

double ConvexPolyhedron::min_value(const Vec& x) const {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& h : h_) m = std::min(m, h(x));
    return m;
}

ChebyshevBall chebyshev_center(const std::vector<AffineFunctional>& constraints, int n, double box, double cap) {
    // rows: g.x - s >= -c, in variables (x, s)
    struct Row {
        Vec a;
        double c;
    };
    std::vector<Row> rows;
    for (const auto& h : constraints) {
        Vec a(n + 1);
        a.head(n) = h.gradient();
        a[n] = -1.0;
        rows.push_back({a, h.offset()});
    }
    for (int i = 0; i < n; ++i)
        for (double sg : {1.0, -1.0}) {
            Vec a = Vec::Zero(n + 1);
            a[i] = sg;
            rows.push_back({a, box});
        }
    Vec capr = Vec::Zero(n + 1);
    capr[n] = -1.0;
    rows.push_back({capr, cap});
    int m = static_cast<int>(rows.size());
    int d = n + 1;
    ChebyshevBall best;
    best.radius = -std::numeric_limits<double>::infinity();
    std::vector<int> pick(d);
    std::iota(pick.begin(), pick.end(), 0);
    while (true) {
        Eigen::MatrixXd A(d, d);
        Vec rhs(d);
        for (int i = 0; i < d; ++i) {
            A.row(i) = rows[pick[i]].a.transpose();
            rhs[i] = -rows[pick[i]].c;
        }
        Eigen::FullPivLU<Eigen::MatrixXd> lu(A);
        if (lu.rank() == d) {
            Vec z = lu.solve(rhs);
            bool ok = true;
            for (const auto& r : rows)
                if (r.a.dot(z) + r.c < -1e-9 * (1.0 + std::abs(r.c))) {
                    ok = false;
                    break;
                }
            if (ok && z[n] > best.radius) {
                best.radius = z[n];
                best.center = z.head(n);
            }
        }
        int i = d - 1;
        while (i >= 0 && pick[i] == m - d + i) --i;
        if (i < 0) break;
        ++pick[i];
        for (int j = i + 1; j < d; ++j) pick[j] = pick[j - 1] + 1;
    }
    if (best.center.size() == 0) {
        best.center = Vec::Zero(n);
        best.radius = -std::numeric_limits<double>::infinity();
    }
    return best;
}

ChebyshevBall chebyshev_center(const ConvexPolyhedron& K) { return chebyshev_center(K.constraints(), K.dim()); }

ConvexPolyhedron intersect(const ConvexPolyhedron& a, const ConvexPolyhedron& b) {
    std::vector<AffineFunctional> h = a.constraints();
    h.insert(h.end(), b.constraints().begin(), b.constraints().end());
    return ConvexPolyhedron(std::move(h), false);
}

ConvexPolyhedron box_polyhedron(const Vec& lo, const Vec& hi) {
    int n = static_cast<int>(lo.size());
    std::vector<AffineFunctional> h;
    for (int i = 0; i < n; ++i) {
        Vec e = Vec::Zero(n);
        e[i] = 1.0;
        h.emplace_back(e, -lo[i]);
        h.emplace_back(-e, hi[i]);
    }
    return ConvexPolyhedron(std::move(h));
}

bool interior_contains(const ConvexPolyhedron& K, const Vec& x, double margin) {
    if (x.size() != K.dim()) throw std::invalid_argument("interior_contains: dimension mismatch");
    for (const auto& h : K.constraints())
        if (!(h(x) > margin)) return false;
    return true;
}

bool closure_contains(const ConvexPolyhedron& K, const Vec& x, double tol) {
    if (x.size() != K.dim()) throw std::invalid_argument("closure_contains: dimension mismatch");
    return K.min_value(x) >= -tol;
}

double clearance(const ConvexPolyhedron& K, const Vec& x) {
    if (x.size() != K.dim()) throw std::invalid_argument("clearance: dimension mismatch");
    double m = K.min_value(x);
    if (m < -1e-12) throw std::invalid_argument("clearance: point outside the polyhedron");
    return std::max(m, 0.0);
}

double segment_clearance(const ConvexPolyhedron& K, const Vec& x, const Vec& y) {
    return std::min(clearance(K, x), clearance(K, y));
}

std::vector<int> active_constraints(const ConvexPolyhedron& K, const Vec& x, double tol) {
    std::vector<int> act;
    for (size_t j = 0; j < K.size(); ++j)
        if (std::abs(K[j](x)) <= tol) act.push_back(static_cast<int>(j));
    return act;
}

std::vector<Vec> polygon_vertices(const ConvexPolyhedron& K) {
    if (K.dim() != 2) throw std::invalid_argument("polygon_vertices: dimension must be 2");
    std::vector<Vec> v;
    for (size_t i = 0; i < K.size(); ++i)
        for (size_t j = i + 1; j < K.size(); ++j) {
            Eigen::Matrix2d A;
            A.row(0) = K[i].gradient().transpose();
            A.row(1) = K[j].gradient().transpose();
            if (std::abs(A.determinant()) < 1e-12) continue;
            Eigen::Vector2d p = A.partialPivLu().solve(Eigen::Vector2d(-K[i].offset(), -K[j].offset()));
            Vec q = p;
            if (K.min_value(q) < -1e-9) continue;
            bool dup = false;
            for (const auto& w : v)
                if ((w - q).norm() < 1e-9) dup = true;
            if (!dup) v.push_back(q);
        }
    if (v.empty()) return v;
    Vec c = Vec::Zero(2);
    for (const auto& w : v) c += w;
    c /= static_cast<double>(v.size());
    std::sort(v.begin(), v.end(), [&](const Vec& a, const Vec& b) {
        return std::atan2(a[1] - c[1], a[0] - c[0]) < std::atan2(b[1] - c[1], b[0] - c[0]);
    });
    return v;
}

}  // namespace smartpath
