#include "helpers.hpp"

#include "smartpath/bridges.hpp"

#include <doctest.h>

#include <random>

using namespace smartpath;
using th::box;
using th::vec;

namespace {
MonomialArc arc2(std::vector<int> ex) {
    MonomialArc a;
    a.base = vec({0, 0});
    a.frame = {vec({1, 0}), vec({0, 1})};
    a.exponents = std::move(ex);
    a.coefficients.assign(a.exponents.size(), 1.0);
    return a;
}

bool arc_inside(const ConvexPolyhedron& L, const ConvexPolyhedron& R, const MonomialArc& a, double eps, int n) {
    for (int i = 1; i <= n; ++i) {
        double t = eps * i / n;
        if (!interior_contains(R, a(t)) || !interior_contains(L, a(-t))) return false;
    }
    return true;
}
}  // namespace

TEST_CASE("cuspidal arc in a box") {
    auto K = box(0, 2, -1, 1);
    BridgeSpec b = cuspidal_arc(K, vec({0, 0}), vec({1, 0}), vec({0, 1}));
    CHECK(b.certified);
    CHECK(b.degree == 3);
    CHECK(b.arc.epsilon >= 0.9);
    for (int i = 1; i <= 1000; ++i) {
        double t = 0.9 * i / 1000;
        CHECK(interior_contains(K, b.arc(t)));
        CHECK(interior_contains(K, b.arc(-t)));
    }
}

TEST_CASE("cuspidal arc from an interior point and bad directions") {
    auto K = box(0, 1, 0, 1);
    BridgeSpec b = cuspidal_arc(K, vec({0.5, 0.5}), vec({0.1, 0}), vec({0, 0.1}));
    CHECK(b.arc.epsilon > 0);
    CHECK_THROWS(cuspidal_arc(K, vec({0, 0.5}), vec({-1, 0}), vec({0, 1})));
    CHECK_THROWS(cuspidal_arc(K, vec({0, 0.5}), vec({0.5, 0}), vec({1, 0})));
}

TEST_CASE("random polytopes give certified cuspidal arcs") {
    std::mt19937 rng(8);
    std::uniform_real_distribution<double> U(0, 1);
    for (int trial = 0; trial < 20; ++trial) {
        int n = 2 + trial % 2;
        std::vector<AffineFunctional> hs;
        for (int j = 0; j < 3 * n; ++j) {
            Vec a = Vec::NullaryExpr(n, [&](Eigen::Index) { return U(rng) - 0.5; });
            hs.emplace_back(-a, 0.5 + U(rng));
        }
        for (int i = 0; i < n; ++i) {
            Vec e = Vec::Zero(n);
            e[i] = 1;
            hs.emplace_back(e, 3.0);
            hs.emplace_back(-e, 3.0);
        }
        ConvexPolyhedron K(hs);
        Vec dir = Vec::NullaryExpr(n, [&](Eigen::Index) { return U(rng) - 0.5; }).normalized();
        double lo = 0, hi = 1;
        while (interior_contains(K, hi * dir)) hi *= 2;
        for (int it = 0; it < 80; ++it) (interior_contains(K, 0.5 * (lo + hi) * dir) ? lo : hi) = 0.5 * (lo + hi);
        Vec p = hi * dir;
        Vec u = -0.2 * p;
        Vec w = Vec::Zero(n);
        w[(n > 1 && std::abs(dir[0]) > 0.7) ? 1 : 0] = 0.2;
        BridgeSpec b = cuspidal_arc(K, p, u, w);
        for (int i = 1; i <= 1000; ++i) {
            double t = b.arc.epsilon * i / 1000;
            CHECK(interior_contains(K, b.arc(t)));
            CHECK(interior_contains(K, b.arc(-t)));
        }
    }
}

TEST_CASE("moment arcs at the contact vertex") {
    auto a = arc2({1, 2});
    ArcCertificate c = moment_arc_valid(th::K20(), th::K1(), a);
    CHECK(c.valid);
    CHECK(arc_inside(th::K20(), th::K1(), a, c.epsilon, 500));
    CHECK_FALSE(moment_arc_valid(th::K20(), th::K1(), arc2({2, 3})).valid);
    auto sq = box(0, 1, 0, 1);
    MonomialArc m = arc2({1, 2});
    m.base = vec({0.5, 0.5});
    CHECK(moment_arc_valid(sq, sq, m).valid);
}

TEST_CASE("parity of certified exponent pairs") {
    using P = std::vector<int>;
    for (int eps = 0; eps < 2; ++eps) {
        const ConvexPolyhedron L = eps == 0 ? th::K20() : th::K21();
        std::vector<P> got;
        for (int k1 = 1; k1 <= 5; ++k1)
            for (int k2 = k1 + 1; k2 <= 5; ++k2)
                if (moment_arc_valid(L, th::K1(), arc2({k1, k2})).valid) got.push_back({k1, k2});
        std::vector<P> want = eps == 0 ? std::vector<P>{{1, 2}, {1, 4}, {3, 4}} : std::vector<P>{{2, 3}, {2, 5}, {4, 5}};
        CHECK(got == want);
        for (const auto& e : got) {
            ReductionResult r = reduce_to_moment(L, th::K1(), arc2(e));
            CHECK(r.arc.exponents == (eps == 0 ? P{1, 2} : P{2, 3}));
            CHECK(moment_arc_valid(L, th::K1(), r.arc).valid);
        }
    }
}

TEST_CASE("reduction of (3,5) between half-planes") {
    ConvexPolyhedron R({th::H(1, 0, 0)}), L({th::H(-1, 0, 0)});
    ReductionResult r = reduce_to_moment(L, R, arc2({3, 5}));
    CHECK(r.arc.exponents == std::vector<int>{1});
    CHECK(moment_arc_valid(L, R, r.arc).valid);
    ReductionResult same = reduce_to_moment(th::K20(), th::K1(), arc2({1, 2}));
    CHECK(same.arc.exponents == std::vector<int>{1, 2});
    ReductionResult same2 = reduce_to_moment(th::K21(), th::K1(), arc2({2, 3}));
    CHECK(same2.arc.exponents == std::vector<int>{2, 3});
}

TEST_CASE("bridge synthesis") {
    BridgeSpec c = synthesize_bridge(box(0, 2, 0, 1), box(0, 1, 0, 2), vec({0.5, 0.5}));
    CHECK(c.kind == BridgeKind::Cuspidal);
    CHECK(c.degree == 3);
    CHECK(c.certified);
    auto sq = box(0, 1, 0, 1);
    for (int i = 1; i <= 200; ++i) {
        double t = c.arc.epsilon * i / 200;
        CHECK(interior_contains(sq, c.arc(t)));
        CHECK(interior_contains(sq, c.arc(-t)));
    }
    BridgeSpec m = synthesize_bridge(th::K20(), th::K1(), vec({0, 0}));
    CHECK(m.kind == BridgeKind::Moment);
    CHECK(m.arc.exponents == std::vector<int>{1, 2});
    CHECK_THROWS(synthesize_bridge(box(0, 1, 0, 1), box(2, 3, 2, 3), vec({1.5, 1.5})));
}
