#include "helpers.hpp"

#include <doctest.h>

#include <random>

using namespace smartpath;
using th::box;
using th::vec;

TEST_CASE("normalization of functionals") {
    AffineFunctional h(vec({3, 4}), 10);
    CHECK(h.gradient().norm() == doctest::Approx(1));
    CHECK(h.offset() == doctest::Approx(2));
    CHECK(h(vec({0, 0})) == doctest::Approx(2));
}

TEST_CASE("empty interiors are rejected") {
    CHECK_THROWS_AS(ConvexPolyhedron({th::H(1, 0, 0), th::H(-1, 0, -1)}), std::invalid_argument);
    CHECK_NOTHROW(ConvexPolyhedron({th::H(1, 0, 0)}));
}

TEST_CASE("interior_contains") {
    auto sq = box(0, 1, 0, 1);
    CHECK(interior_contains(sq, vec({0.5, 0.5})));
    CHECK_FALSE(interior_contains(sq, vec({0, 0.5})));
    CHECK_FALSE(interior_contains(sq, vec({0.4, 0.5}), 0.45));
    CHECK(closure_contains(sq, vec({0, 0.5})));
    CHECK_FALSE(closure_contains(sq, vec({-0.1, 0.5})));
}

TEST_CASE("clearance") {
    auto sq = box(0, 1, 0, 1);
    CHECK(clearance(sq, vec({0.5, 0.5})) == doctest::Approx(0.5));
    CHECK(clearance(sq, vec({0.1, 0.5})) == doctest::Approx(0.1));
    CHECK(clearance(sq, vec({1, 1})) == doctest::Approx(0));
}

TEST_CASE("segment_clearance") {
    auto sq = box(0, 1, 0, 1);
    CHECK(segment_clearance(sq, vec({0.25, 0.5}), vec({0.75, 0.5})) == doctest::Approx(0.25));
    CHECK(segment_clearance(sq, vec({0.3, 0.2}), vec({0.3, 0.2})) == doctest::Approx(clearance(sq, vec({0.3, 0.2}))));
    CHECK(segment_clearance(sq, vec({0, 0.5}), vec({0.5, 0.5})) == doctest::Approx(0));
}

TEST_CASE("segment_clearance matches brute force on random polygons") {
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> U(0, 1);
    for (int trial = 0; trial < 50; ++trial) {
        int m = 3 + trial % 6;
        std::vector<AffineFunctional> hs;
        for (int j = 0; j < m; ++j) {
            double th = 2 * M_PI * (j + 0.3 * U(rng)) / m;
            hs.emplace_back(vec({-std::cos(th), -std::sin(th)}), 0.5 + U(rng));
        }
        ConvexPolyhedron K(hs);
        Vec x = vec({0.4 * (U(rng) - 0.5), 0.4 * (U(rng) - 0.5)});
        Vec y = vec({0.4 * (U(rng) - 0.5), 0.4 * (U(rng) - 0.5)});
        double brute = 1e300;
        for (int i = 0; i <= 1000; ++i) {
            double s = i / 1000.0;
            brute = std::min(brute, clearance(K, (1 - s) * x + s * y));
        }
        CHECK(std::abs(segment_clearance(K, x, y) - brute) <= 1e-12);
    }
}

TEST_CASE("chebyshev center and intersection") {
    auto c = chebyshev_center(box(0, 4, 0, 2));
    CHECK(c.radius == doctest::Approx(1));
    CHECK(c.center[1] == doctest::Approx(1));
    auto I = intersect(box(0, 2, 0, 1), box(0, 1, 0, 2));
    CHECK(chebyshev_center(I).radius == doctest::Approx(0.5));
    CHECK(chebyshev_center(intersect(box(0, 1, 0, 1), box(2, 3, 0, 1))).radius < 0);
}

TEST_CASE("active constraints and polygon vertices") {
    auto sq = box(0, 1, 0, 1);
    CHECK(active_constraints(sq, vec({0, 0})).size() == 2);
    CHECK(active_constraints(sq, vec({0.5, 0.5})).empty());
    auto v = polygon_vertices(sq);
    CHECK(v.size() == 4);
}
