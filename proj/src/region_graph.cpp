#include "smartpath/region_graph.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>

namespace smartpath {

const RegionEdge* RegionGraph::find_edge(int i, int j) const {
    for (const auto& e : edges)
        if ((e.i == i && e.j == j) || (e.i == j && e.j == i)) return &e;
    return nullptr;
}

std::optional<BridgeSpec> RegionGraph::bridge(int i, int j) const {
    const RegionEdge* e = find_edge(i, j);
    if (!e) return std::nullopt;
    return e->i == i ? e->bridge : reversed(e->bridge);
}

std::vector<int> RegionGraph::neighbors(int i) const {
    std::vector<int> out;
    for (const auto& e : edges) {
        if (e.i == i) out.push_back(e.j);
        if (e.j == i) out.push_back(e.i);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

int RegionGraph::components() const {
    std::vector<int> comp(size(), -1);
    int c = 0;
    for (int s = 0; s < size(); ++s) {
        if (comp[s] >= 0) continue;
        std::queue<int> q;
        q.push(s);
        comp[s] = c;
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            for (int w : neighbors(v))
                if (comp[w] < 0) {
                    comp[w] = c;
                    q.push(w);
                }
        }
        ++c;
    }
    return c;
}

BridgeSpec reversed(const BridgeSpec& b) {
    BridgeSpec r = b;
    for (int l = 0; l < r.arc.d(); ++l)
        if (r.arc.exponents[l] % 2) r.arc.coefficients[l] = -r.arc.coefficients[l];
    std::swap(r.left_region, r.right_region);
    return r;
}

std::optional<ChebyshevBall> common_point(const ConvexPolyhedron& a, const ConvexPolyhedron& b) {
    ConvexPolyhedron I = intersect(a, b);
    ChebyshevBall cb = chebyshev_center(I);
    if (cb.radius < -1e-9) return std::nullopt;
    if (cb.radius < 1e-9) cb.radius = 0.0;
    return cb;
}

namespace {

std::optional<BridgeSpec> try_pair(const std::vector<ConvexPolyhedron>& regions, int i, int j,
                                   const BridgeHint* hint, bool& touching) {
    const auto& Ki = regions[i];
    const auto& Kj = regions[j];
    touching = false;
    if (hint && !hint->frame.empty()) {
        if (!hint->base_point) throw std::invalid_argument("bridge hint with a frame needs a base point");
        MonomialArc arc;
        arc.base = *hint->base_point;
        arc.frame = hint->frame;
        arc.exponents = hint->exponents;
        arc.coefficients.assign(arc.exponents.size(), 1.0);
        if (arc.frame.size() != arc.exponents.size())
            throw std::invalid_argument("bridge hint: frame and exponents differ in length");
        if (!closure_contains(Ki, arc.base) || !closure_contains(Kj, arc.base)) return std::nullopt;
        touching = true;
        ArcCertificate c = moment_arc_valid(Ki, Kj, arc);
        if (!c.valid) return std::nullopt;
        arc.epsilon = c.epsilon;
        BridgeSpec b;
        b.kind = BridgeKind::Moment;
        b.arc = arc;
        b.base_point = arc.base;
        b.degree = arc.degree();
        b.certified = true;
        return b;
    }
    Vec q;
    if (hint && hint->base_point) {
        q = *hint->base_point;
        if (!closure_contains(Ki, q) || !closure_contains(Kj, q)) return std::nullopt;
    } else {
        auto cp = common_point(Ki, Kj);
        if (!cp) return std::nullopt;
        q = cp->center;
    }
    touching = true;
    try {
        return synthesize_bridge(Ki, Kj, q);
    } catch (const std::runtime_error&) {
        return std::nullopt;
    }
}

}  // namespace

RegionGraph build_region_graph(const std::vector<ConvexPolyhedron>& regions, const std::vector<BridgeHint>& hints) {
    int r = static_cast<int>(regions.size());
    for (const auto& h : hints)
        if (h.from < 0 || h.to < 0 || h.from >= r || h.to >= r || h.from == h.to)
            throw std::invalid_argument("bridge hint references missing regions (" + std::to_string(h.from) + ", " +
                                        std::to_string(h.to) + ")");
    RegionGraph g;
    g.vertices = regions;
    for (int i = 0; i < r; ++i)
        for (int j = i + 1; j < r; ++j) {
            const BridgeHint* hint = nullptr;
            bool flip = false;
            for (const auto& h : hints) {
                if (h.from == i && h.to == j) hint = &h;
                if (h.from == j && h.to == i) {
                    hint = &h;
                    flip = true;
                }
            }
            int a = flip ? j : i, b = flip ? i : j;
            bool touching = false;
            auto br = try_pair(regions, a, b, hint, touching);
            if (!br) {
                if (touching) g.unknown.emplace_back(i, j);
                continue;
            }
            br->left_region = a;
            br->right_region = b;
            RegionEdge e;
            e.i = i;
            e.j = j;
            e.bridge = flip ? reversed(*br) : *br;
            g.edges.push_back(e);
        }
    return g;
}

std::vector<int> route_through_regions(const RegionGraph& graph, const std::vector<int>& required) {
    if (required.empty()) return {};
    for (int v : required)
        if (v < 0 || v >= graph.size()) throw std::out_of_range("route: vertex " + std::to_string(v) + " out of range");
    std::vector<int> walk{required.front()};
    for (size_t k = 1; k < required.size(); ++k) {
        int s = walk.back(), t = required[k];
        if (s == t) continue;
        std::vector<int> prev(graph.size(), -1);
        std::queue<int> q;
        q.push(s);
        prev[s] = s;
        while (!q.empty() && prev[t] < 0) {
            int v = q.front();
            q.pop();
            for (int w : graph.neighbors(v))
                if (prev[w] < 0) {
                    prev[w] = v;
                    q.push(w);
                }
        }
        if (prev[t] < 0) throw RoutingError(s, t);
        std::vector<int> seg;
        for (int v = t; v != s; v = prev[v]) seg.push_back(v);
        walk.insert(walk.end(), seg.rbegin(), seg.rend());
    }
    return walk;
}

}  // namespace smartpath
