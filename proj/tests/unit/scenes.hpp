#pragma once

#include "helpers.hpp"

#include "smartpath/planner.hpp"

namespace th {

struct TestScene {
    std::vector<smartpath::ConvexPolyhedron> regions;
    std::vector<smartpath::Waypoint> waypoints;
};

// L-shaped union of two rectangles, waypoints on the boundary of each
inline TestScene scene_a() {
    return {{box(0, 4, 0, 2), box(2, 4, 0, 6)}, {{0, vec({1.6, 2.0}), 0.3}, {1, vec({2.0, 2.4}), 0.7}}};
}

// two triangles meeting at the origin
inline TestScene scene_b() {
    return {{K1(), K20()}, {{1, vec({-0.6, 0.2}), 0.3}, {0, vec({0.6, 0.2}), 0.7}}};
}

// true when every sample lies in the interior of some region or on a listed point
inline bool union_contains(const std::vector<smartpath::ConvexPolyhedron>& regions,
                           const std::vector<smartpath::Vec>& allowed, const smartpath::Vec& x) {
    for (const auto& K : regions)
        if (smartpath::interior_contains(K, x)) return true;
    for (const auto& p : allowed)
        if ((p - x).norm() < 1e-9) return true;
    return false;
}

}  // namespace th
