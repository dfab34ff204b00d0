#include "smartpath/scene.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace smartpath {

using nlohmann::json;

namespace {

std::string g17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

const json& need(const json& j, const char* key, const std::string& field) {
    if (!j.is_object() || !j.contains(key)) throw SceneError(field + "." + key, "missing");
    return j.at(key);
}

double number(const json& j, const std::string& field) {
    if (!j.is_number()) throw SceneError(field, "expected a number");
    double v = j.get<double>();
    if (!std::isfinite(v)) throw SceneError(field, "not finite");
    return v;
}

int integer(const json& j, const std::string& field) {
    if (!j.is_number_integer()) throw SceneError(field, "expected an integer");
    return j.get<int>();
}

Vec vector_of(const json& j, int n, const std::string& field) {
    if (!j.is_array()) throw SceneError(field, "expected an array");
    if (static_cast<int>(j.size()) != n) throw SceneError(field, "expected " + std::to_string(n) + " entries");
    Vec v(n);
    for (int i = 0; i < n; ++i) v[i] = number(j[i], field + "[" + std::to_string(i) + "]");
    return v;
}

json vec_json(const Vec& v) {
    json a = json::array();
    for (int i = 0; i < v.size(); ++i) a.push_back(v[i]);
    return a;
}

}  // namespace

Scene parse_scene(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw SceneError("scene", std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw SceneError("scene", "expected an object");
    const json& schema = need(j, "schema", "scene");
    if (!schema.is_string() || schema.get<std::string>() != kSceneSchema)
        throw SceneError("scene.schema", std::string("expected \"") + kSceneSchema + "\"");
    Scene s;
    s.dimension = integer(need(j, "dimension", "scene"), "scene.dimension");
    if (s.dimension < 1) throw SceneError("scene.dimension", "must be positive");
    int n = s.dimension;

    const json& regions = need(j, "regions", "scene");
    if (!regions.is_array() || regions.empty()) throw SceneError("scene.regions", "expected a nonempty array");
    for (size_t i = 0; i < regions.size(); ++i) {
        std::string f = "regions[" + std::to_string(i) + "]";
        const json& hs = need(regions[i], "halfspaces", f);
        if (!hs.is_array() || hs.empty()) throw SceneError(f + ".halfspaces", "expected a nonempty array");
        std::vector<AffineFunctional> h;
        for (size_t k = 0; k < hs.size(); ++k) {
            std::string g = f + ".halfspaces[" + std::to_string(k) + "]";
            Vec a = vector_of(need(hs[k], "normal", g), n, g + ".normal");
            double b = number(need(hs[k], "offset", g), g + ".offset");
            if (a.norm() == 0.0) throw SceneError(g + ".normal", "zero normal");
            h.emplace_back(a, b);
        }
        try {
            s.regions.emplace_back(std::move(h));
        } catch (const std::invalid_argument& e) {
            throw SceneError(f, e.what());
        }
    }
    int r = static_cast<int>(s.regions.size());

    const json& wps = need(j, "waypoints", "scene");
    if (!wps.is_array() || wps.empty()) throw SceneError("scene.waypoints", "expected a nonempty array");
    for (size_t i = 0; i < wps.size(); ++i) {
        std::string f = "waypoints[" + std::to_string(i) + "]";
        Waypoint w;
        w.region = integer(need(wps[i], "region", f), f + ".region");
        if (w.region < 0 || w.region >= r) throw SceneError(f + ".region", "no such region");
        w.point = vector_of(need(wps[i], "point", f), n, f + ".point");
        w.time = number(need(wps[i], "time", f), f + ".time");
        if (!(w.time > 0.0 && w.time < 1.0)) throw SceneError(f + ".time", "must lie in (0, 1)");
        if (i > 0 && !(w.time > s.waypoints.back().time))
            throw SceneError(f + ".time", "times must be strictly increasing");
        if (!closure_contains(s.regions[w.region], w.point))
            throw SceneError(f + ".point", "outside the closure of region " + std::to_string(w.region));
        s.waypoints.push_back(w);
    }

    if (j.contains("bridge_hints")) {
        const json& hs = j.at("bridge_hints");
        if (!hs.is_array()) throw SceneError("scene.bridge_hints", "expected an array");
        for (size_t i = 0; i < hs.size(); ++i) {
            std::string f = "bridge_hints[" + std::to_string(i) + "]";
            const json& pair = need(hs[i], "regions", f);
            if (!pair.is_array() || pair.size() != 2) throw SceneError(f + ".regions", "expected two indices");
            BridgeHint h;
            h.from = integer(pair[0], f + ".regions[0]");
            h.to = integer(pair[1], f + ".regions[1]");
            if (h.from < 0 || h.from >= r || h.to < 0 || h.to >= r || h.from == h.to)
                throw SceneError(f + ".regions", "references missing regions");
            if (hs[i].contains("base_point")) h.base_point = vector_of(hs[i].at("base_point"), n, f + ".base_point");
            if (hs[i].contains("frame")) {
                const json& fr = hs[i].at("frame");
                if (!fr.is_array()) throw SceneError(f + ".frame", "expected an array");
                for (size_t k = 0; k < fr.size(); ++k)
                    h.frame.push_back(vector_of(fr[k], n, f + ".frame[" + std::to_string(k) + "]"));
                const json& ex = need(hs[i], "exponents", f);
                if (!ex.is_array() || ex.size() != fr.size())
                    throw SceneError(f + ".exponents", "must match the frame length");
                for (size_t k = 0; k < ex.size(); ++k) {
                    int e = integer(ex[k], f + ".exponents[" + std::to_string(k) + "]");
                    if (e < 1 || (k > 0 && e <= h.exponents.back()))
                        throw SceneError(f + ".exponents", "must be positive and strictly increasing");
                    h.exponents.push_back(e);
                }
                if (!h.base_point) throw SceneError(f + ".base_point", "required with a frame");
            }
            s.hints.push_back(h);
        }
    }
    s.options.hints = s.hints;

    if (j.contains("options")) {
        const json& o = j.at("options");
        if (!o.is_object()) throw SceneError("scene.options", "expected an object");
        if (o.contains("mode")) {
            std::string m = o.at("mode").is_string() ? o.at("mode").get<std::string>() : "";
            if (m == "adaptive")
                s.options.mode = DegreeMode::Adaptive;
            else if (m == "analytic")
                s.options.mode = DegreeMode::Analytic;
            else
                throw SceneError("options.mode", "expected \"adaptive\" or \"analytic\"");
        }
        if (o.contains("basis")) {
            std::string m = o.at("basis").is_string() ? o.at("basis").get<std::string>() : "";
            if (m == "localized")
                s.options.basis = CorrectionBasis::Localized;
            else if (m == "hermite")
                s.options.basis = CorrectionBasis::Hermite;
            else
                throw SceneError("options.basis", "expected \"localized\" or \"hermite\"");
        }
        if (o.contains("nu_cap")) {
            s.options.nu_cap = integer(o.at("nu_cap"), "options.nu_cap");
            if (s.options.nu_cap < 1) throw SceneError("options.nu_cap", "must be positive");
        }
        if (o.contains("samples")) {
            s.csv_samples = integer(o.at("samples"), "options.samples");
            if (s.csv_samples < 1) throw SceneError("options.samples", "must be positive");
        }
        if (o.contains("cert_samples")) {
            s.options.samples = integer(o.at("cert_samples"), "options.cert_samples");
            if (s.options.samples < 10) throw SceneError("options.cert_samples", "must be at least 10");
        }
        if (o.contains("window_fraction")) {
            s.options.window_fraction = number(o.at("window_fraction"), "options.window_fraction");
            if (!(s.options.window_fraction > 0.0 && s.options.window_fraction < 0.5))
                throw SceneError("options.window_fraction", "must lie in (0, 0.5)");
        }
        if (o.contains("seed")) s.seed = integer(o.at("seed"), "options.seed");
    }
    return s;
}

Scene load_scene(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SceneError("scene", "cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_scene(ss.str());
}

std::string path_json(const PlanResult& r) {
    const BernsteinPath& p = r.path;
    json j;
    j["schema"] = "smartpath/path/1";
    j["basis"] = "bernstein";
    j["domain"] = {p.lo(), p.hi()};
    j["degree"] = p.degree();
    j["nu"] = r.nu;
    j["dimension"] = p.dim();
    json cp = json::array();
    for (int c = 0; c < p.dim(); ++c) cp.push_back(p[c].coeffs());
    j["control_points"] = cp;
    if (p.degree() <= 60) {
        // Taylor coefficients about the midpoint of the domain
        double c = 0.5 * (p.lo() + p.hi());
        json mono = json::array();
        for (int k = 0; k < p.dim(); ++k) {
            std::vector<double> a;
            double fact = 1.0;
            for (int m = 0; m <= p.degree(); ++m) {
                if (m > 0) fact *= m;
                a.push_back(p[k].derivative_at(m, c) / fact);
            }
            mono.push_back(a);
        }
        j["monomial"] = {{"center", c}, {"coefficients", mono}};
    }
    return j.dump(2) + "\n";
}

std::string cert_json(const PlanResult& r, int seed) {
    json j;
    j["schema"] = "smartpath/cert/1";
    j["all_pass"] = r.cert.all_pass;
    j["exact"] = r.cert.exact;
    j["jets"] = r.cert.jets;
    j["sampling"] = r.cert.sampling;
    j["sample_violations"] = r.cert.sample_violations;
    j["max_waypoint_residual"] = r.cert.max_waypoint_residual;
    j["max_jet_residual"] = r.cert.max_jet_residual;
    j["failure"] = r.cert.failure;
    j["nu"] = r.nu;
    j["degree"] = r.path.degree();
    j["seed"] = seed;
    json checks = json::array();
    for (const auto& c : r.cert.checks)
        checks.push_back({{"name", c.name},
                          {"pass", c.pass},
                          {"informational", c.informational},
                          {"value", c.value},
                          {"limit", c.limit},
                          {"detail", c.detail}});
    j["checks"] = checks;
    json mu = json::array();
    for (const auto& m : r.budget.mu)
        mu.push_back({{"anchor", m.anchor},
                      {"side", m.right_side ? "right" : "left"},
                      {"constraint", m.constraint},
                      {"order", m.order},
                      {"value", m.value}});
    j["budget"] = {{"eps", r.budget.eps},      {"eps_prime", r.budget.eps_prime}, {"l", r.budget.l},
                   {"jet_orders", r.budget.jet_orders}, {"mu", mu}};
    json anchors = json::array();
    for (const auto& a : r.schedule.anchors)
        anchors.push_back({{"kind", to_string(a.kind)},
                           {"time", a.time},
                           {"point", vec_json(a.point)},
                           {"half_width", a.half_width},
                           {"jet_order", a.jet_order}});
    json bridges = json::array();
    for (size_t i = 0; i < r.schedule.bridges.size(); ++i) {
        const auto& b = r.schedule.bridges[i];
        bridges.push_back({{"kind", to_string(b.kind)},
                           {"time", r.schedule.bridge_times[i]},
                           {"regions", {b.left_region, b.right_region}},
                           {"base_point", vec_json(b.base_point)},
                           {"exponents", b.arc.exponents},
                           {"degree", b.degree},
                           {"epsilon", b.arc.epsilon}});
    }
    j["schedule"] = {{"region_sequence", r.schedule.region_sequence}, {"anchors", anchors}, {"bridges", bridges}};
    return j.dump(2) + "\n";
}

std::string samples_csv(const BernsteinPath& path, int samples) {
    std::vector<double> ts;
    for (int i = 0; i <= samples; ++i) ts.push_back(static_cast<double>(i) / samples);
    std::vector<Vec> xs = sample_path(path, ts);
    std::ostringstream os;
    os << "t";
    for (int c = 0; c < path.dim(); ++c) os << ",x" << (c + 1);
    os << "\n";
    for (size_t i = 0; i < ts.size(); ++i) {
        os << g17(ts[i]);
        for (int c = 0; c < path.dim(); ++c) os << "," << g17(xs[i][c]);
        os << "\n";
    }
    return os.str();
}

std::string plot_svg(const std::vector<ConvexPolyhedron>& regions, const PlanResult& r) {
    std::vector<double> ts;
    for (int i = 0; i <= 1000; ++i) ts.push_back(i / 1000.0);
    std::vector<Vec> alpha = sample_path(r.path, ts);
    std::vector<Vec> guide;
    for (double t : ts) guide.push_back(r.guide(t));
    std::vector<std::vector<Vec>> polys;
    for (const auto& K : regions) polys.push_back(polygon_vertices(K));
    double x0 = 1e300, x1 = -1e300, y0 = 1e300, y1 = -1e300;
    auto grow = [&](const Vec& v) {
        x0 = std::min(x0, v[0]);
        x1 = std::max(x1, v[0]);
        y0 = std::min(y0, v[1]);
        y1 = std::max(y1, v[1]);
    };
    for (const auto& P : polys)
        for (const auto& v : P) grow(v);
    for (const auto& v : alpha) grow(v);
    double pad = 0.05 * std::max(x1 - x0, y1 - y0);
    x0 -= pad;
    x1 += pad;
    y0 -= pad;
    y1 += pad;
    const double W = 800.0;
    double scale = W / std::max(x1 - x0, y1 - y0);
    double H = (y1 - y0) * scale;
    double Wd = (x1 - x0) * scale;
    auto X = [&](double x) { return g17((x - x0) * scale).substr(0, 10); };
    auto Y = [&](double y) { return g17((y1 - y) * scale).substr(0, 10); };
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << Wd << "\" height=\"" << H << "\" viewBox=\"0 0 "
       << Wd << " " << H << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    static const char* colors[] = {"#4e79a7", "#f28e2b", "#59a14f", "#e15759", "#76b7b2", "#edc948"};
    for (size_t k = 0; k < polys.size(); ++k) {
        os << "<polygon fill=\"" << colors[k % 6] << "\" fill-opacity=\"0.25\" stroke=\"" << colors[k % 6]
           << "\" points=\"";
        for (const auto& v : polys[k]) os << X(v[0]) << "," << Y(v[1]) << " ";
        os << "\"/>\n";
    }
    auto polyline = [&](const std::vector<Vec>& pts, const char* style) {
        os << "<polyline fill=\"none\" " << style << " points=\"";
        for (const auto& v : pts) os << X(v[0]) << "," << Y(v[1]) << " ";
        os << "\"/>\n";
    };
    polyline(guide, "stroke=\"#888\" stroke-dasharray=\"6 4\" stroke-width=\"1.5\"");
    polyline(alpha, "stroke=\"black\" stroke-width=\"2\"");
    for (const auto& p : r.schedule.waypoints)
        os << "<circle cx=\"" << X(p[0]) << "\" cy=\"" << Y(p[1]) << "\" r=\"5\" fill=\"#e15759\"/>\n";
    for (const auto& q : r.schedule.base_points)
        os << "<rect x=\"" << X(q[0]) << "\" y=\"" << Y(q[1]) << "\" width=\"8\" height=\"8\" transform=\"translate(-4,-4)\" fill=\"#59a14f\"/>\n";
    os << "</svg>\n";
    return os.str();
}

}  // namespace smartpath
