#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "framelift/catalog.hpp"
#include "framelift/geometry_core.hpp"
#include "framelift/lift.hpp"
#include "framelift/report.hpp"
#include "framelift/submersion.hpp"

namespace py = pybind11;
using namespace framelift;

namespace {

const ChartManifold& side(const std::string& id, const std::string& which) {
  const auto& e = get(id);
  if (which == "source") return *e.phi.source;
  if (which == "target") return *e.phi.target;
  throw py::value_error("which must be 'source' or 'target'");
}

FDConfig make_cfg(double h, double h2) {
  FDConfig c;
  c.step_h = h;
  c.step_h2 = h2;
  c.validate();
  return c;
}

}  // namespace

PYBIND11_MODULE(_framelift, m) {
  // Translators are tried newest first, so the base class goes first.
  py::register_exception<GeometryError>(m, "GeometryError", PyExc_RuntimeError);
  py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

  m.def("ids", &ids);
  m.def("suites", &suite_names);
  m.def("info", [](const std::string& id) {
    const auto& e = get(id);
    py::dict d;
    d["id"] = e.id;
    d["name"] = e.name;
    d["description"] = e.description;
    d["source"] = e.phi.source->name();
    d["target"] = e.phi.target->name();
    d["source_dim"] = e.phi.n();
    d["target_dim"] = e.phi.k();
    d["reference_point"] = e.reference_point;
    return d;
  });
  m.def("sample", [](const std::string& id, std::uint64_t seed, int count) { return get(id).phi.source->sample(seed, count); },
        py::arg("id"), py::arg("seed") = 42, py::arg("count") = 10);

  m.def("metric", [](const std::string& id, const Vec& p, const std::string& which) {
        return metric_eval(side(id, which), p);
      }, py::arg("id"), py::arg("p"), py::arg("which") = "source");
  // Gamma[k] is the matrix (Gamma^k_ij).
  m.def("christoffel", [](const std::string& id, const Vec& p, const std::string& which, double h, double h2) {
        return christoffel(side(id, which), p, make_cfg(h, h2)).upper();
      }, py::arg("id"), py::arg("p"), py::arg("which") = "source", py::arg("h") = 1e-5, py::arg("h2") = 1e-4);
  m.def("sectional_curvature",
        [](const std::string& id, const Vec& p, const Vec& X, const Vec& Y, const std::string& which, double h,
           double h2) { return sectional_curvature(side(id, which), p, X, Y, make_cfg(h, h2)); },
        py::arg("id"), py::arg("p"), py::arg("X"), py::arg("Y"), py::arg("which") = "source", py::arg("h") = 1e-5,
        py::arg("h2") = 1e-4);

  m.def("map", [](const std::string& id, const Vec& p) {
    const auto& e = get(id);
    e.phi.source->require(p);
    return e.phi(p);
  });
  m.def("jacobian", [](const std::string& id, const Vec& p) { return jacobian(get(id).phi, p, FDConfig{}); });
  m.def("dilatation", [](const std::string& id, const Vec& p) {
    const Dilatation d = dilatation(get(id).phi, p, FDConfig{});
    return py::make_tuple(d.lambda, d.defect);
  });
  m.def("tension", [](const std::string& id, const Vec& p) { return tension_field(get(id).phi, p, FDConfig{}); });
  m.def("fiber_mean_curvature",
        [](const std::string& id, const Vec& p) { return mean_curvature_fibers(get(id).phi, p, FDConfig{}); });

  m.def("classify", [](const std::string& id, int samples, std::uint64_t seed) {
        const auto& e = get(id);
        const ClassificationReport r = classify(e.phi, e.phi.source->sample(seed, samples), seed, FDConfig{});
        py::dict d;
        d["horizontally_conformal"] = r.horizontally_conformal;
        d["dilatation_constant"] = r.dilatation_constant;
        d["lambda_mean"] = r.lambda_mean;
        d["totally_geodesic"] = r.totally_geodesic;
        d["fibers_totally_geodesic"] = r.fibers_totally_geodesic;
        d["H_integrable"] = r.H_integrable;
        d["harmonic"] = r.harmonic;
        d["harmonic_morphism"] = r.harmonic_morphism;
        d["lift_conformal_predicted"] = r.lift_conformal_predicted;
        d["lift_conformal_measured"] = std::string(to_string(r.lift_conformal_measured));
        d["lift_harmonic_morphism_predicted"] = r.lift_harmonic_morphism_predicted;
        d["max_lift_defect"] = r.max_lift_defect;
        d["Lambda_mean"] = r.Lambda_mean;
        return d;
      }, py::arg("id"), py::arg("samples") = 10, py::arg("seed") = 42);

  // Returns (exit_code, report JSON). Timing is omitted unless asked for, so equal seeds give equal strings.
  m.def("verify",
        [](std::vector<std::string> examples, std::vector<std::string> suites, int samples, std::uint64_t seed,
           bool timing) {
          RunConfig rc;
          rc.examples = std::move(examples);
          rc.suites = std::move(suites);
          rc.samples = samples;
          rc.seed = seed;
          const RunConfig n = normalized(rc);
          RunResult res;
          {
            py::gil_scoped_release release;
            res = run(n);
          }
          return py::make_tuple(res.exit_code, report_json(n, res.reports, timing));
        },
        py::arg("examples") = std::vector<std::string>{"all"}, py::arg("suites") = std::vector<std::string>{"all"},
        py::arg("samples") = 10, py::arg("seed") = 42, py::arg("timing") = false);
}
