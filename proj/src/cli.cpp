#include "smartpath/cli.hpp"

#include "smartpath/bernstein.hpp"
#include "smartpath/scene.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

namespace smartpath {

namespace fs = std::filesystem;

namespace {

bool write_file(const fs::path& p, const std::string& text, std::ostream& err) {
    std::ofstream f(p, std::ios::binary);
    if (!f || !(f << text)) {
        err << "error: cannot write " << p.string() << "\n";
        return false;
    }
    return true;
}

std::string g17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

struct RateRow {
    std::string id;
    int l = 0, nu = 0;
    double measured = 0.0, bound = 0.0;
    bool ok = true;
};

RateRow rate_row(const std::string& id, const FunctionOracle& f, const IntervalSet& K, int l, int nu,
                 const DerivativeNorms& norms, const CompactBoundConstants* consts) {
    RateRow row{id, l, nu};
    BernsteinPolynomial B = bernstein_form(f, nu);
    const int grid = 400;
    const double roundoff = 1e-13 * std::pow(2.0 * nu, l);
    for (const auto& [a, b] : K) {
        for (int i = 0; i <= grid; ++i) {
            double x = a + (b - a) * i / grid;
            double fx = l == 0 ? f(x) : f.derivative_eval(l, x);
            double e = std::abs(B.derivative_at(l, x) - fx);
            double bd = consts ? compact_error_bound(f, l, nu, x, norms, *consts)
                               : smooth_error_bound(l, nu, x, norms);
            row.measured = std::max(row.measured, e);
            row.bound = std::max(row.bound, bd);
            if (e > bd * (1 + 1e-9) + roundoff) row.ok = false;
        }
    }
    return row;
}

}  // namespace

int cmd_plan(const std::string& scene_path, const CliFlags& flags, std::ostream& out, std::ostream& err) {
    Scene scene;
    try {
        scene = load_scene(scene_path);
    } catch (const SceneError& e) {
        err << "schema error: " << e.what() << "\n";
        return kExitSchema;
    }
    if (flags.mode) scene.options.mode = *flags.mode;
    if (flags.nu_cap) scene.options.nu_cap = *flags.nu_cap;
    if (flags.samples) scene.csv_samples = *flags.samples;
    if (flags.seed) scene.seed = *flags.seed;

    PlanResult res;
    try {
        res = plan(scene.regions, scene.waypoints, scene.options);
    } catch (const PlanError& e) {
        err << "planning failed at stage " << e.stage << ": " << e.what() << "\n";
        return kExitPlanning;
    } catch (const std::exception& e) {
        err << "planning failed at stage unknown: " << e.what() << "\n";
        return kExitPlanning;
    }

    fs::path dir(flags.out);
    std::error_code ec;
    fs::create_directories(dir, ec);
    bool ok = write_file(dir / "path.json", path_json(res), err) &&
              write_file(dir / "cert.json", cert_json(res, scene.seed), err) &&
              write_file(dir / "samples.csv", samples_csv(res.path, scene.csv_samples), err);
    if (ok && scene.dimension == 2) ok = write_file(dir / "plot.svg", plot_svg(scene.regions, res), err);
    if (!ok) return kExitPlanning;

    out << "degree " << res.path.degree() << ", " << res.schedule.anchors.size() << " anchors, "
        << (res.cert.all_pass ? "certified" : "NOT certified") << "\n";
    if (!res.cert.all_pass) {
        err << "certification failed: " << res.cert.failure << "\n";
        return kExitCertification;
    }
    return kExitOk;
}

int cmd_validate(const std::string& scene_path, std::ostream& out, std::ostream& err) {
    Scene scene;
    try {
        scene = load_scene(scene_path);
    } catch (const SceneError& e) {
        err << "schema error: " << e.what() << "\n";
        return kExitSchema;
    }
    RegionGraph g;
    try {
        g = build_region_graph(scene.regions, scene.hints);
    } catch (const std::invalid_argument& e) {
        err << "schema error: bridge_hints: " << e.what() << "\n";
        return kExitSchema;
    }
    out << scene.regions.size() << " regions, " << scene.waypoints.size() << " waypoints, " << g.edges.size()
        << " bridged pairs, " << g.components() << " component(s)\n";
    for (const auto& e : g.edges)
        out << "  " << e.i << " -- " << e.j << " (" << to_string(e.bridge.kind) << ", degree " << e.bridge.degree
            << ")\n";
    for (const auto& [i, j] : g.unknown) out << "  " << i << " ?? " << j << " (touching, no certified bridge)\n";
    std::vector<int> req;
    for (const auto& w : scene.waypoints) req.push_back(w.region);
    try {
        auto route = route_through_regions(g, req);
        out << "route:";
        for (int v : route) out << " " << v;
        out << "\n";
    } catch (const RoutingError& e) {
        out << "route: none (" << e.what() << ")\n";
    }
    return kExitOk;
}

int cmd_rates(const CliFlags& flags, std::ostream& out, std::ostream& err) {
    const std::vector<int> nus = {10, 20, 40, 80, 160, 320};
    const IntervalSet unit = {{0.0, 1.0}};
    std::vector<RateRow> rows;
    struct Smooth {
        std::string id;
        Polynomial p;
        int lmax;
    };
    std::vector<Smooth> suite = {{"x", Polynomial::monomial(1), 2},
                                 {"x^2", Polynomial::monomial(2), 2},
                                 {"x^4", Polynomial::monomial(4), 2}};
    for (const auto& s : suite) {
        FunctionOracle f = polynomial_oracle(s.p);
        DerivativeNorms norms = derivative_norms(f, unit, s.lmax + 2);
        for (int l = 0; l <= s.lmax; ++l)
            for (int nu : nus) rows.push_back(rate_row(s.id, f, unit, l, nu, norms, nullptr));
    }
    {
        FunctionOracle f = abs_oracle(0.5);
        IntervalSet K = {{0.05, 0.3}};
        for (int l = 0; l <= 1; ++l) {
            DerivativeNorms norms = derivative_norms(f, K, l + 3);
            CompactBoundConstants c = compact_constants(f, K, l);
            for (int nu : nus) rows.push_back(rate_row("|x-1/2|", f, K, l, nu, norms, &c));
        }
    }
    std::ostringstream csv;
    csv << "function,l,nu,measured,bound\n";
    bool valid = true;
    for (const auto& r : rows) {
        csv << r.id << "," << r.l << "," << r.nu << "," << g17(r.measured) << "," << g17(r.bound) << "\n";
        if (!r.ok) {
            valid = false;
            err << "bound violated: " << r.id << " l=" << r.l << " nu=" << r.nu << "\n";
        }
    }
    fs::path dir(flags.out);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (!write_file(dir / "rates.csv", csv.str(), err)) return kExitPlanning;
    out << rows.size() << " rows written to " << (dir / "rates.csv").string() << "\n";
    return valid ? kExitOk : kExitCertification;
}

}  // namespace smartpath
