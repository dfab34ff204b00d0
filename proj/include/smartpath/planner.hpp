#pragma once

#include "smartpath/bernstein.hpp"
#include "smartpath/bridges.hpp"
#include "smartpath/geometry.hpp"
#include "smartpath/interp.hpp"
#include "smartpath/poly.hpp"
#include "smartpath/region_graph.hpp"

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace smartpath {

struct Waypoint {
    int region = 0;
    Vec point;
    double time = 0.0;
};

enum class DegreeMode { Adaptive, Analytic };

// Hermite: the explicit P_ik family; Localized: Bernstein images of compact bumps around each time
enum class CorrectionBasis { Localized, Hermite };

struct PlanOptions {
    DegreeMode mode = DegreeMode::Adaptive;
    int nu_start = 8;
    int nu_cap = 4096;
    double window_fraction = 0.45;
    CorrectionBasis basis = CorrectionBasis::Localized;
    int samples = 10000;
    int max_depth = 40;
    std::vector<BridgeHint> hints;
};

class PlanError : public std::runtime_error {
public:
    PlanError(std::string stage, const std::string& msg)
        : std::runtime_error(stage + ": " + msg), stage(std::move(stage)) {}
    std::string stage;
};

enum class AnchorKind {
    Graze,     // boundary waypoint, local piece p + sV + s^2 k u + s^3 W
    Interior,  // interior waypoint, position only
    Cuspidal,  // cuspidal bridge with interior base point, position only
    Moment,    // moment bridge q + sum c_l s^k_l v_l
};

std::string to_string(AnchorKind k);

struct Anchor {
    AnchorKind kind = AnchorKind::Interior;
    double time = 0.0;
    Vec point;
    ConvexPolyhedron left, right;  // regions on each side of the anchor
    std::vector<int> active;       // active constraints of `left` (graze)
    Vec inward;
    MonomialArc arc;
    double half_width = 0.0;
    int jet_order = -1;
    int waypoint = -1, bridge = -1;

    bool windowed() const { return kind == AnchorKind::Graze || kind == AnchorKind::Moment; }
    bool interpolated() const { return jet_order >= 0; }
};

struct ControlSchedule {
    std::vector<double> waypoint_times;
    std::vector<Vec> waypoints;
    std::vector<int> waypoint_regions;
    std::vector<double> bridge_times;
    std::vector<Vec> base_points;
    std::vector<BridgeSpec> bridges;
    std::vector<int> region_sequence;
    std::vector<Anchor> anchors;  // sorted by time
    Vec start, end;
    double window_fraction = 0.45;

    std::vector<double> delta() const;  // half-widths around waypoint times
    std::vector<double> rho() const;    // half-widths around bridge times
};

ControlSchedule make_schedule(const std::vector<ConvexPolyhedron>& regions, const RegionGraph& graph,
                              const std::vector<Waypoint>& waypoints, double window_fraction = 0.45);

struct GuidePiece {
    double t0 = 0.0, t1 = 0.0, origin = 0.0;
    PolynomialPath poly;  // in s = t - origin
    int anchor = -1;      // -1 for connectors
};

struct GuidePath {
    std::vector<GuidePiece> pieces;

    int dim() const { return pieces.front().poly.dim(); }
    int piece_index(double t) const;
    Vec operator()(double t) const;
    Vec derivative(int k, double t) const;
    double max_joint_gap() const;
};

GuidePath build_guide_path(const std::vector<ConvexPolyhedron>& regions, ControlSchedule& schedule);

struct MuEntry {
    int anchor = 0;
    bool right_side = true;
    int constraint = 0;
    int order = 0;
    double value = 0.0;
};

struct AnalyticConstants {
    double C = 0.0;
    std::vector<double> Ci, Li;
    std::vector<int> e;              // jet orders at waypoints
    std::vector<double> beta_norm;   // sup |beta_i^(e_i)|
    std::vector<int> d;              // jet orders at bridges
    std::vector<double> lambda_norm; // sup |lambda_i^(d_i)|
};

struct ErrorBudget {
    double eps = 0.0;
    double eps_prime = 0.0;
    std::vector<MuEntry> mu;
    std::vector<int> jet_orders;
    int l = 0;
    int n = 0;
    int r = 0;
    std::optional<AnalyticConstants> analytic;
};

ErrorBudget compute_error_budget(const GuidePath& guide, const std::vector<ConvexPolyhedron>& regions,
                                 const ControlSchedule& schedule);
void attach_analytic_constants(ErrorBudget& budget, const GuidePath& guide, const ControlSchedule& schedule);

int hermite_floor(int n, int r);
int analytic_degree(const ErrorBudget& budget);
// probe(nu) returns true when the path smoothed at degree nu certifies
int estimate_degree(const ErrorBudget& budget, DegreeMode mode, int nu_cap,
                    const std::function<bool(int)>& probe = {}, int nu_start = 8);

BernsteinPath smooth_path(const GuidePath& guide, const ControlSchedule& schedule, const ErrorBudget& budget,
                          int nu, CorrectionBasis basis = CorrectionBasis::Localized);

struct CertCheck {
    std::string name;
    bool pass = false;
    bool informational = false;
    double value = 0.0;
    double limit = 0.0;
    std::string detail;
};

struct CertReport {
    std::vector<CertCheck> checks;
    bool exact = false;
    bool jets = false;
    bool sampling = false;
    bool all_pass = false;
    int sample_violations = 0;
    double max_waypoint_residual = 0.0;
    double max_jet_residual = 0.0;
    std::string failure;
};

struct CertOptions {
    int samples = 10000;
    int max_depth = 40;
    bool exact = true;
};

CertReport certify_path(const BernsteinPath& alpha, const GuidePath& guide,
                        const std::vector<ConvexPolyhedron>& regions, const ControlSchedule& schedule,
                        const ErrorBudget& budget, const CertOptions& opt = {});

struct PlanResult {
    BernsteinPath path;
    int nu = 0;
    CertReport cert;
    GuidePath guide;
    ErrorBudget budget;
    ControlSchedule schedule;
    RegionGraph graph;
};

PlanResult plan(const std::vector<ConvexPolyhedron>& regions, const std::vector<Waypoint>& waypoints,
                const PlanOptions& opt = {});

// Evaluate many parameters at once (O(degree) per point).
std::vector<Vec> sample_path(const BernsteinPath& path, const std::vector<double>& ts);

}  // namespace smartpath
