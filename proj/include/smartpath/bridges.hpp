#pragma once

#include "smartpath/geometry.hpp"
#include "smartpath/poly.hpp"

#include <string>
#include <vector>

namespace smartpath {

// t -> base + sum_l a_l t^k_l v_l
struct MonomialArc {
    Vec base;
    std::vector<Vec> frame;
    std::vector<int> exponents;
    std::vector<double> coefficients;
    double epsilon = 0.0;

    int d() const { return static_cast<int>(exponents.size()); }
    int degree() const { return exponents.empty() ? 0 : exponents.back(); }
    Vec operator()(double t) const;
    // polynomial path in the arc parameter (base at t = 0)
    PolynomialPath path() const;
};

enum class BridgeKind { Cuspidal, Moment };

struct BridgeSpec {
    BridgeKind kind = BridgeKind::Cuspidal;
    MonomialArc arc;
    Vec base_point;
    int left_region = -1, right_region = -1;
    int degree = 0;
    bool certified = false;
};

std::string to_string(BridgeKind k);

BridgeSpec cuspidal_arc(const ConvexPolyhedron& K, const Vec& p, const Vec& u, const Vec& w);

struct ConstraintTerm {
    bool right_side = true;
    int constraint = 0;
    int order = 0;
    int sign = 0;
    double coeff = 0.0;
    bool ok = false;
};

struct ArcCertificate {
    bool valid = false;
    double epsilon = 0.0;
    std::vector<ConstraintTerm> terms;
};

ArcCertificate moment_arc_valid(const ConvexPolyhedron& K_left, const ConvexPolyhedron& K_right,
                                const MonomialArc& arc);

struct ReductionStep {
    std::string description;
    std::vector<int> exponents;
    double eta = 0.0;
};

struct ReductionResult {
    MonomialArc arc;
    std::vector<ReductionStep> steps;
};

ReductionResult reduce_to_moment(const ConvexPolyhedron& K_left, const ConvexPolyhedron& K_right,
                                 const MonomialArc& arc);

struct BridgeOptions {
    int max_candidates = 32;
};

BridgeSpec synthesize_bridge(const ConvexPolyhedron& K1, const ConvexPolyhedron& K2, const Vec& q,
                             const BridgeOptions& opt = {});

}  // namespace smartpath
