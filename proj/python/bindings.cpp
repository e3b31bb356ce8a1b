#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "vilab/json_io.hpp"

namespace py = pybind11;
using namespace vilab;

namespace {

py::dict report_dict(const SolveReport& rep) {
  py::dict d;
  d["u"] = rep.u;
  d["iterations"] = rep.iterations;
  d["converged"] = rep.converged;
  return d;
}

py::dict criterion_dict(const CriterionReport& rep) {
  py::dict d;
  d["t_approximating"] = rep.t_approximating;
  d["tykhonov_approximating"] = rep.tykhonov_approximating;
  d["lp_approximating"] = rep.lp_approximating;
  d["converging_trend"] = rep.converging_trend;
  d["bounded_ok"] = rep.bounded_ok;
  py::list rows;
  for (const auto& r : rep.rows) {
    py::dict row;
    row["distance"] = r.distance;
    row["eps_one_plus"] = r.eps_one_plus;
    row["eps_norm"] = r.eps_norm;
    row["lp_witness_norm"] = r.lp_witness_norm;
    row["err_to_solution"] = r.err_to_solution;
    rows.append(row);
  }
  d["rows"] = rows;
  d["reference_u"] = rep.reference_u;
  return d;
}

}  // namespace

PYBIND11_MODULE(_vilab, m) {
  m.doc() = "elliptic variational inequality solver and convergence lab";

  py::register_exception<ValidationError>(m, "ValidationError");

  py::class_<VIProblem>(m, "Problem")
      .def_property_readonly("dim", &VIProblem::dim)
      .def("slack", &VIProblem::vi_slack, py::arg("u_n"), py::arg("v"))
      .def("to_json", [](const VIProblem& p) { return problem_to_json(p).dump(2); });

  m.def("load_problem",
        [](const std::string& text) { return problem_from_json(json::parse(text)); },
        py::arg("json_text"), "build a problem from its JSON document");

  m.def("scalar_projection_problem", &scalar_projection_problem, py::arg("lo"),
        py::arg("hi"), py::arg("f"));

  m.def(
      "solve",
      [](const VIProblem& p, double tol, bool accelerate, long max_iter) {
        SolveConfig cfg;
        cfg.tol = tol;
        cfg.accelerate = accelerate;
        cfg.max_iter = max_iter;
        return report_dict(solve_vi(p, cfg));
      },
      py::arg("problem"), py::arg("tol") = 1e-10, py::arg("accelerate") = false,
      py::arg("max_iter") = 200000);

  m.def(
      "epsilon_residual",
      [](const VIProblem& p, const Vector& u_n, const std::string& mode,
         unsigned long seed) {
        CriterionOptions opts;
        opts.seed = seed;
        const ResidualMode rm = (mode == "norm") ? ResidualMode::Norm
                                                 : ResidualMode::OnePlusNorm;
        return epsilon_residual(p, u_n, rm, opts);
      },
      py::arg("problem"), py::arg("u_n"), py::arg("mode") = "one_plus_norm",
      py::arg("seed") = 12345);

  m.def(
      "classify_sequence",
      [](const VIProblem& p, const std::vector<Vector>& seq,
         unsigned long seed) {
        CriterionOptions opts;
        opts.seed = seed;
        return criterion_dict(classify_sequence(p, seq, opts));
      },
      py::arg("problem"), py::arg("sequence"), py::arg("seed") = 12345);
}
