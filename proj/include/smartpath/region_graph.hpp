#pragma once

#include "smartpath/bridges.hpp"
#include "smartpath/geometry.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace smartpath {

struct BridgeHint {
    int from = -1, to = -1;
    std::optional<Vec> base_point;
    std::vector<Vec> frame;
    std::vector<int> exponents;
};

struct RegionEdge {
    int i = 0, j = 0;
    BridgeSpec bridge;  // left side in region i, right side in region j
};

struct RegionGraph {
    std::vector<ConvexPolyhedron> vertices;
    std::vector<RegionEdge> edges;
    // pairs with touching closures where no bridge was certified
    std::vector<std::pair<int, int>> unknown;

    int size() const { return static_cast<int>(vertices.size()); }
    const RegionEdge* find_edge(int i, int j) const;
    // bridge oriented from region i to region j
    std::optional<BridgeSpec> bridge(int i, int j) const;
    std::vector<int> neighbors(int i) const;
    int components() const;
};

// t -> arc(-t), left and right swapped
BridgeSpec reversed(const BridgeSpec& b);

// Common closure point: Chebyshev center of the intersection, radius ~0 means contact only.
std::optional<ChebyshevBall> common_point(const ConvexPolyhedron& a, const ConvexPolyhedron& b);

RegionGraph build_region_graph(const std::vector<ConvexPolyhedron>& regions,
                               const std::vector<BridgeHint>& hints = {});

class RoutingError : public std::runtime_error {
public:
    RoutingError(int a, int b)
        : std::runtime_error("regions " + std::to_string(a) + " and " + std::to_string(b) + " are not connected"),
          from(a), to(b) {}
    int from, to;
};

std::vector<int> route_through_regions(const RegionGraph& graph, const std::vector<int>& required);

}  // namespace smartpath
