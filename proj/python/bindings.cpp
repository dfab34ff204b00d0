#include "smartpath/bernstein.hpp"
#include "smartpath/bridges.hpp"
#include "smartpath/cli.hpp"
#include "smartpath/geometry.hpp"
#include "smartpath/interp.hpp"
#include "smartpath/planner.hpp"
#include "smartpath/scene.hpp"

#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace smartpath;

namespace {

ConvexPolyhedron polyhedron(const std::vector<std::pair<Vec, double>>& halfspaces) {
    std::vector<AffineFunctional> h;
    for (const auto& [a, b] : halfspaces) h.emplace_back(a, b);
    return ConvexPolyhedron(std::move(h));
}

FunctionOracle oracle(const std::function<double(double)>& f, double a, double b) {
    FunctionOracle o;
    o.eval = f;
    o.a = a;
    o.b = b;
    o.smooth_set = {{a, b}};
    return o;
}

}  // namespace

PYBIND11_MODULE(_smartpath, m) {
    m.doc() = "Certified polynomial paths through unions of convex polyhedra";

    py::class_<Polynomial>(m, "Polynomial")
        .def(py::init<std::vector<double>>(), py::arg("coeffs"))
        .def_property_readonly("coeffs", [](const Polynomial& p) { return p.coeffs(); })
        .def_property_readonly("degree", &Polynomial::degree)
        .def("__call__", [](const Polynomial& p, double t) { return p(t); })
        .def("derivative", [](const Polynomial& p, int k) { return derivative(p, k); }, py::arg("order") = 1)
        .def("__repr__", [](const Polynomial& p) {
            std::ostringstream os;
            os << "Polynomial(degree=" << p.degree() << ")";
            return os.str();
        });

    m.def("bernstein_poly",
          [](const std::function<double(double)>& f, int nu, double a, double b) {
              return bernstein_poly(oracle(f, a, b), nu, a, b);
          },
          py::arg("f"), py::arg("nu"), py::arg("a") = 0.0, py::arg("b") = 1.0);
    m.def("bernstein_basis_all", &bernstein_basis_all, py::arg("nu"), py::arg("x"));
    m.def("binomial_moment", &binomial_moment, py::arg("nu"), py::arg("x"), py::arg("m"));

    m.def("hermite_basis_derivative",
          [](std::vector<double> times, int l, int i, int k, int order, double t) {
              HermiteSetup s;
              s.times = std::move(times);
              s.l = l;
              return hermite_basis_polynomial(s, i, k).derivative_at(order, t);
          },
          py::arg("times"), py::arg("l"), py::arg("i"), py::arg("k"), py::arg("order"), py::arg("t"));

    py::class_<ConvexPolyhedron>(m, "ConvexPolyhedron")
        .def(py::init(&polyhedron), py::arg("halfspaces"))
        .def_property_readonly("dim", &ConvexPolyhedron::dim)
        .def("interior_contains", [](const ConvexPolyhedron& K, const Vec& x, double margin) {
            return interior_contains(K, x, margin);
        }, py::arg("x"), py::arg("margin") = 0.0)
        .def("closure_contains", [](const ConvexPolyhedron& K, const Vec& x) { return closure_contains(K, x); })
        .def("clearance", [](const ConvexPolyhedron& K, const Vec& x) { return clearance(K, x); })
        .def("segment_clearance",
             [](const ConvexPolyhedron& K, const Vec& x, const Vec& y) { return segment_clearance(K, x, y); });

    py::class_<BridgeSpec>(m, "BridgeSpec")
        .def_property_readonly("kind", [](const BridgeSpec& b) { return to_string(b.kind); })
        .def_property_readonly("degree", [](const BridgeSpec& b) { return b.degree; })
        .def_property_readonly("exponents", [](const BridgeSpec& b) { return b.arc.exponents; })
        .def_property_readonly("epsilon", [](const BridgeSpec& b) { return b.arc.epsilon; })
        .def("__call__", [](const BridgeSpec& b, double t) { return b.arc(t); });
    m.def("cuspidal_arc", &cuspidal_arc, py::arg("K"), py::arg("p"), py::arg("u"), py::arg("w"));
    m.def("synthesize_bridge",
          [](const ConvexPolyhedron& a, const ConvexPolyhedron& b, const Vec& q) { return synthesize_bridge(a, b, q); },
          py::arg("K1"), py::arg("K2"), py::arg("q"));

    py::class_<PlanResult>(m, "PlanResult")
        .def_property_readonly("degree", [](const PlanResult& r) { return r.path.degree(); })
        .def_property_readonly("nu", [](const PlanResult& r) { return r.nu; })
        .def_property_readonly("all_pass", [](const PlanResult& r) { return r.cert.all_pass; })
        .def_property_readonly("failure", [](const PlanResult& r) { return r.cert.failure; })
        .def_property_readonly("control_points", [](const PlanResult& r) {
            std::vector<std::vector<double>> cp;
            for (int c = 0; c < r.path.dim(); ++c) cp.push_back(r.path[c].coeffs());
            return cp;
        })
        .def("__call__", [](const PlanResult& r, double t) { return r.path(t); })
        .def("sample", [](const PlanResult& r, const std::vector<double>& ts) { return sample_path(r.path, ts); });

    m.def("plan_scene",
          [](const std::string& json_text) {
              Scene s = parse_scene(json_text);
              return plan(s.regions, s.waypoints, s.options);
          },
          py::arg("json_text"));

    m.def("cli_plan",
          [](const std::string& scene, const std::string& out) {
              CliFlags f;
              f.out = out;
              std::ostringstream o, e;
              int rc = cmd_plan(scene, f, o, e);
              return py::make_tuple(rc, o.str(), e.str());
          },
          py::arg("scene_path"), py::arg("out_dir"));

    py::register_exception<SceneError>(m, "SceneError", PyExc_ValueError);
    py::register_exception<PlanError>(m, "PlanError", PyExc_RuntimeError);
}
