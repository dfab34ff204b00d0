#pragma once

#include "smartpath/geometry.hpp"
#include "smartpath/poly.hpp"

#include <initializer_list>
#include <string>

namespace th {

using smartpath::AffineFunctional;
using smartpath::ConvexPolyhedron;
using smartpath::Vec;

inline Vec vec(std::initializer_list<double> xs) {
    Vec v(static_cast<int>(xs.size()));
    int i = 0;
    for (double x : xs) v[i++] = x;
    return v;
}

inline AffineFunctional H(double a, double b, double c) { return AffineFunctional(vec({a, b}), c); }

// [x0,x1] x [y0,y1]
inline ConvexPolyhedron box(double x0, double x1, double y0, double y1) {
    return ConvexPolyhedron({H(1, 0, -x0), H(-1, 0, x1), H(0, 1, -y0), H(0, -1, y1)});
}

// triangles of the two-triangle example: K1 on the right, K20 on the left, K21 below-left
inline ConvexPolyhedron K1() { return ConvexPolyhedron({H(0, 1, 0), H(1, -1, 0), H(-1, 0, 1)}); }
inline ConvexPolyhedron K20() { return ConvexPolyhedron({H(0, 1, 0), H(-1, -1, 0), H(1, 0, 1)}); }
inline ConvexPolyhedron K21() { return ConvexPolyhedron({H(1, 1, 0), H(0, -1, 0), H(-1, 0, 1)}); }

inline std::string data(const std::string& name) { return std::string(SMARTPATH_TEST_DATA) + "/" + name; }

}  // namespace th
