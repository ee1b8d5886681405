#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mpvc/report.hpp"

namespace py = pybind11;

namespace {

// Structured results cross the boundary as JSON text; the package decodes it.
template <class T>
std::string dump(const T& v) {
  return mpvc::json(v).dump();
}

}  // namespace

PYBIND11_MODULE(_mpvc, m) {
  m.doc() = "Programs with vanishing constraints: penalties, constraint qualifications, audits";
  m.attr("__version__") = MPVC_VERSION;

  py::register_exception<mpvc::ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<mpvc::InfeasiblePointError>(m, "InfeasiblePointError", PyExc_ValueError);
  py::register_exception<mpvc::InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);
  py::register_exception<mpvc::EvalError>(m, "EvalError", PyExc_ArithmeticError);

  py::class_<mpvc::MpvcProblem>(m, "Problem")
      .def_property_readonly("name", &mpvc::MpvcProblem::name)
      .def_property_readonly("dim", &mpvc::MpvcProblem::dim)
      .def_property_readonly("m", &mpvc::MpvcProblem::m)
      .def_property_readonly("l", &mpvc::MpvcProblem::l)
      .def_property_readonly("q", &mpvc::MpvcProblem::q)
      .def_property_readonly("variables",
                             [](const mpvc::MpvcProblem& p) { return p.vars().names(); })
      .def("to_text", &mpvc::MpvcProblem::to_text)
      .def("objective", [](const mpvc::MpvcProblem& p, const mpvc::Point& x) { return p.f(x); })
      .def("residual",
           [](const mpvc::MpvcProblem& p, const mpvc::Point& x) { return mpvc::residual_total(p, x); })
      .def(
          "penalty",
          [](const mpvc::MpvcProblem& p, const mpvc::Point& x, double alpha) {
            return mpvc::penalty_tailored(p, x, alpha).total;
          },
          py::arg("x"), py::arg("alpha"))
      .def(
          "penalty_l1",
          [](const mpvc::MpvcProblem& p, const mpvc::Point& x, double alpha) {
            return mpvc::penalty_l1(p, x, alpha).total;
          },
          py::arg("x"), py::arg("alpha"))
      .def(
          "_classify",
          [](const mpvc::MpvcProblem& p, const mpvc::Point& x, double tol) {
            return dump(mpvc::classify(p, x, tol));
          },
          py::arg("x"), py::arg("tol_active") = mpvc::kDefaultTolActive);

  m.def("parse_problem", &mpvc::parse_problem, py::arg("text"));
  m.def(
      "load_problem", [](const std::string& path) { return mpvc::load_problem(path); },
      py::arg("path"));
  m.def(
      "dist_omega", [](double a, double b) { return mpvc::dist_omega({a, b}); }, py::arg("G"),
      py::arg("H"));

  m.def(
      "_analyze",
      [](const mpvc::MpvcProblem& p, const mpvc::Point& x, std::size_t directions,
         std::uint64_t seed, double tol) {
        mpvc::FullReportConfig cfg;
        cfg.acq_direction_count = directions;
        cfg.seed = seed;
        cfg.search.seed = seed;
        return dump(mpvc::full_report(p, x, mpvc::classify(p, x, tol), cfg));
      },
      py::arg("problem"), py::arg("x"), py::arg("directions") = 360, py::arg("seed") = 7,
      py::arg("tol_active") = mpvc::kDefaultTolActive);
  m.def(
      "_penalty_sweep",
      [](const mpvc::MpvcProblem& p, const mpvc::Point& x, const std::vector<double>& alphas,
         std::uint64_t seed) {
        mpvc::SweepConfig cfg;
        cfg.seed = seed;
        return dump(mpvc::penalty_sweep(p, x, alphas, cfg));
      },
      py::arg("problem"), py::arg("x"), py::arg("alphas"), py::arg("seed") = 7);
  m.def(
      "_scan_error_bound",
      [](const mpvc::MpvcProblem& p, const mpvc::Point& x, double radius, std::size_t samples,
         std::uint64_t seed) { return dump(mpvc::scan_error_bound(p, x, radius, samples, seed)); },
      py::arg("problem"), py::arg("x"), py::arg("radius") = 0.1, py::arg("samples") = 500,
      py::arg("seed") = 7);
  m.def(
      "_solve",
      [](const mpvc::MpvcProblem& p, std::uint64_t seed) {
        mpvc::SolveConfig cfg;
        cfg.seed = seed;
        return dump(mpvc::solve_mpvc(p, cfg));
      },
      py::arg("problem"), py::arg("seed") = 7);
  m.def(
      "_audit",
      [](std::size_t instances, std::uint64_t seed) {
        mpvc::AuditConfig cfg;
        cfg.generator.instances = instances;
        return dump(mpvc::audit_corpus(cfg, seed));
      },
      py::arg("instances") = 200, py::arg("seed") = 7);
}
