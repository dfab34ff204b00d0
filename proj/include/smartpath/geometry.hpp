#pragma once

#include "smartpath/poly.hpp"

#include <optional>
#include <vector>

namespace smartpath {

// K = { x : h_j(x) >= 0 for all j }
class ConvexPolyhedron {
public:
    ConvexPolyhedron() = default;
    ConvexPolyhedron(std::vector<AffineFunctional> constraints, bool require_interior = true);

    int dim() const { return n_; }
    const std::vector<AffineFunctional>& constraints() const { return h_; }
    size_t size() const { return h_.size(); }
    const AffineFunctional& operator[](size_t j) const { return h_[j]; }

    double min_value(const Vec& x) const;

private:
    std::vector<AffineFunctional> h_;
    int n_ = 0;
};

struct ChebyshevBall {
    Vec center;
    double radius = 0.0;  // negative when the constraints are infeasible
};

// Maximizes min_j h_j(x) inside the box |x_i| <= box.
ChebyshevBall chebyshev_center(const std::vector<AffineFunctional>& constraints, int n, double box = 1e6,
                               double cap = 1e6);
ChebyshevBall chebyshev_center(const ConvexPolyhedron& K);

ConvexPolyhedron intersect(const ConvexPolyhedron& a, const ConvexPolyhedron& b);
ConvexPolyhedron box_polyhedron(const Vec& lo, const Vec& hi);

bool interior_contains(const ConvexPolyhedron& K, const Vec& x, double margin = 0.0);
bool closure_contains(const ConvexPolyhedron& K, const Vec& x, double tol = 1e-9);
double clearance(const ConvexPolyhedron& K, const Vec& x);
double segment_clearance(const ConvexPolyhedron& K, const Vec& x, const Vec& y);
std::vector<int> active_constraints(const ConvexPolyhedron& K, const Vec& x, double tol = 1e-9);

// Vertices of a bounded polygon (n = 2), counter-clockwise.
std::vector<Vec> polygon_vertices(const ConvexPolyhedron& K);

}  // namespace smartpath
