#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pnp2g/error_norms.hpp"
#include "pnp2g/pnp.hpp"
#include "pnp2g/problem.hpp"
#include "pnp2g/study.hpp"

namespace py = pybind11;
using namespace pnp2g;

namespace {

std::shared_ptr<const Mesh> make_mesh(int m) {
  return std::make_shared<const Mesh>(build_uniform_mesh(m));
}

py::dict record_to_dict(const StudyRow& row) {
  py::dict d;
  d["h"] = row.record.h;
  d["H"] = row.record.H ? py::object(py::float_(*row.record.H)) : py::none();
  d["tau"] = row.tau;
  d["n_steps"] = row.n_steps;
  d["err_phi_l2"] = row.record.err_phi_l2;
  d["err_p1_l2"] = row.record.err_p1_l2;
  d["err_p2_l2"] = row.record.err_p2_l2;
  d["err_phi_h1"] = row.record.err_phi_h1;
  d["err_p1_h1"] = row.record.err_p1_h1;
  d["err_p2_h1"] = row.record.err_p2_h1;
  const auto opt = [](const std::optional<double>& o) {
    return o ? py::object(py::float_(*o)) : py::none();
  };
  d["order_phi_l2"] = opt(row.record.order_phi_l2);
  d["order_p1_l2"] = opt(row.record.order_p1_l2);
  d["order_p2_l2"] = opt(row.record.order_p2_l2);
  d["order_phi_h1"] = opt(row.record.order_phi_h1);
  d["order_p1_h1"] = opt(row.record.order_p1_h1);
  d["order_p2_h1"] = opt(row.record.order_p2_h1);
  d["gummel_iterations"] = row.stats.gummel_iterations;
  d["linear_solve_count"] = row.stats.linear_solve_count;
  d["wall_seconds"] = row.stats.wall_seconds;
  d["failed"] = row.failed;
  d["message"] = row.message;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Finite element and two-grid solvers for the time-dependent "
            "Poisson-Nernst-Planck system on the unit square";

  py::register_exception<SolveFailure>(m, "SolveFailure");
  py::register_exception<GummelFailure>(m, "GummelFailure");

  py::class_<Mesh, std::shared_ptr<Mesh>>(m, "Mesh")
      .def_readonly("m", &Mesh::m)
      .def_property_readonly("h", &Mesh::h)
      .def_property_readonly("node_count", &Mesh::node_count)
      .def_property_readonly("triangle_count", &Mesh::triangle_count)
      .def_readonly("nodes", &Mesh::nodes)
      .def_readonly("triangles", &Mesh::triangles)
      .def_readonly("boundary", &Mesh::boundary)
      .def("triangle_area", &Mesh::triangle_area);

  m.def("build_uniform_mesh", [](int subdivisions) {
    return std::const_pointer_cast<Mesh>(make_mesh(subdivisions));
  }, py::arg("m"), "Uniform triangulation of the unit square");
  m.def("boundary_nodes",
        [](const std::shared_ptr<Mesh>& mesh) { return boundary_nodes(*mesh); },
        py::arg("mesh"));
  m.def("locate_element",
        [](const std::shared_ptr<Mesh>& mesh, double x, double y) {
          return locate_element(*mesh, x, y);
        },
        py::arg("mesh"), py::arg("x"), py::arg("y"));

  py::class_<FeFunction>(m, "FeFunction")
      .def_property_readonly(
          "mesh",
          [](const FeFunction& f) {
            return std::const_pointer_cast<Mesh>(f.mesh);
          })
      .def_readwrite("coeffs", &FeFunction::coeffs)
      .def("__call__",
           [](const FeFunction& f, double x, double y) {
             return evaluate(f, x, y);
           })
      .def("gradient", [](const FeFunction& f, double x, double y) {
        return evaluate_gradient(f, x, y);
      });

  m.def("fe_zero",
        [](const std::shared_ptr<Mesh>& mesh) {
          return FeFunction::zero(mesh);
        },
        py::arg("mesh"));
  m.def("fe_interpolate",
        [](const std::shared_ptr<Mesh>& mesh, const ScalarField& f, double t) {
          return FeFunction::interpolate(mesh, f, t);
        },
        py::arg("mesh"), py::arg("field"), py::arg("t"),
        "Nodal interpolant of field(x, y, t)");
  m.def("prolongate",
        [](const FeFunction& coarse, const std::shared_ptr<Mesh>& fine) {
          return prolongate(coarse, fine);
        },
        py::arg("coarse"), py::arg("fine_mesh"),
        "Transfer onto a nested finer mesh");

  py::class_<ProblemSpec>(m, "ProblemSpec")
      .def_readonly("q1", &ProblemSpec::q1)
      .def_readonly("q2", &ProblemSpec::q2)
      .def_readonly("final_time", &ProblemSpec::final_time)
      .def_readonly("f1", &ProblemSpec::f1)
      .def_readonly("f2", &ProblemSpec::f2)
      .def_readonly("f3", &ProblemSpec::f3)
      .def_readonly("exact_p1", &ProblemSpec::exact_p1)
      .def_readonly("exact_p2", &ProblemSpec::exact_p2)
      .def_readonly("exact_phi", &ProblemSpec::exact_phi);

  m.def("make_manufactured_problem", &make_manufactured_problem,
        "Manufactured sine/exponential benchmark with charges +1/-1");

  py::class_<StepStats>(m, "StepStats")
      .def_readonly("gummel_iterations", &StepStats::gummel_iterations)
      .def_readonly("linear_solve_count", &StepStats::linear_solve_count)
      .def_readonly("wall_seconds", &StepStats::wall_seconds)
      .def_readonly("gummel_residuals", &StepStats::gummel_residuals);

  py::class_<PnpState>(m, "PnpState")
      .def_readonly("t", &PnpState::t)
      .def_readonly("p1", &PnpState::p1)
      .def_readonly("p2", &PnpState::p2)
      .def_readonly("phi", &PnpState::phi)
      .def_static(
          "zero",
          [](const std::shared_ptr<Mesh>& mesh, double t) {
            return PnpState::zero(mesh, t);
          },
          py::arg("mesh"), py::arg("t") = 0.0);

  py::class_<TimeGrid>(m, "TimeGrid")
      .def_readonly("tau", &TimeGrid::tau)
      .def_readonly("n_steps", &TimeGrid::n_steps)
      .def_readonly("T", &TimeGrid::T)
      .def_static("from_step_count", &TimeGrid::from_step_count,
                  py::arg("T"), py::arg("n_steps"))
      .def_static("square_rule", &TimeGrid::square_rule, py::arg("T"),
                  py::arg("m"))
      .def_static("from_tau_hint", &TimeGrid::from_tau_hint, py::arg("T"),
                  py::arg("tau"));

  py::class_<MarchResult>(m, "MarchResult")
      .def_readonly("fine", &MarchResult::fine)
      .def_property_readonly(
          "coarse",
          [](const MarchResult& r) -> py::object {
            return r.coarse ? py::cast(*r.coarse) : py::none();
          })
      .def_readonly("stats", &MarchResult::stats);

  m.def(
      "march",
      [](const std::string& method, const ProblemSpec& problem, int m_fine,
         int m_coarse, const TimeGrid& time, double gummel_tol, double lin_tol,
         int max_gummel) {
        SolverOptions options;
        options.gummel_tol = gummel_tol;
        options.lin_tol = lin_tol;
        options.max_gummel = max_gummel;
        return march(method_from_string(method), problem, m_fine, m_coarse,
                     time, options);
      },
      py::arg("method"), py::arg("problem"), py::arg("m_fine"),
      py::arg("m_coarse"), py::arg("time"), py::arg("gummel_tol") = 1e-6,
      py::arg("lin_tol") = 1e-8, py::arg("max_gummel") = 100,
      "Advance the chosen scheme from zero initial data");

  m.def(
      "solve_poisson",
      [](const std::shared_ptr<Mesh>& mesh, const FeFunction& p1,
         const FeFunction& p2, const ProblemSpec& problem, double t,
         double tol) {
        return solve_poisson(mesh, p1, p2, problem, t, tol);
      },
      py::arg("mesh"), py::arg("p1"), py::arg("p2"), py::arg("problem"),
      py::arg("t"), py::arg("tol") = 1e-8,
      "Potential solve with frozen concentrations");
  m.def(
      "solve_np",
      [](const std::shared_ptr<Mesh>& mesh, const FeFunction& p_prev,
         const FeFunction& phi, double q, const ScalarField& f, double tau,
         double t_next, double tol) {
        return solve_np(mesh, p_prev, phi, q, f, tau, t_next, tol);
      },
      py::arg("mesh"), py::arg("p_prev"), py::arg("phi"), py::arg("q"),
      py::arg("f"), py::arg("tau"), py::arg("t_next"), py::arg("tol") = 1e-8,
      "One transport solve with a frozen potential");
  m.def(
      "gummel_step",
      [](const PnpState& state, const ProblemSpec& problem, double tau,
         double gummel_tol, double lin_tol, int max_gummel) {
        SolverOptions options;
        options.gummel_tol = gummel_tol;
        options.lin_tol = lin_tol;
        options.max_gummel = max_gummel;
        return gummel_step(state, problem, tau, options);
      },
      py::arg("state"), py::arg("problem"), py::arg("tau"),
      py::arg("gummel_tol") = 1e-6, py::arg("lin_tol") = 1e-8,
      py::arg("max_gummel") = 100,
      "One coupled backward-Euler step resolved by the nonlinear iteration");

  m.def("l2_error", &l2_error, py::arg("f"), py::arg("exact"), py::arg("t"));
  m.def("h1_error", &h1_error, py::arg("f"), py::arg("exact"),
        py::arg("exact_grad"), py::arg("t"));
  m.def("convergence_order", &convergence_order, py::arg("err_coarse"),
        py::arg("err_fine"), py::arg("h_coarse"), py::arg("h_fine"));

  m.def(
      "run_study",
      [](const std::string& method, const std::vector<int>& m_list,
         const std::vector<int>& m_coarse, bool sqrt_pairing, double final_time,
         py::object tau, double gummel_tol, double lin_tol,
         const std::string& out) {
        RunConfig config;
        config.method = method_from_string(method);
        config.m_list = m_list;
        config.m_coarse_list = m_coarse;
        config.sqrt_pairing = sqrt_pairing;
        config.final_time = final_time;
        if (!tau.is_none()) config.tau = tau.cast<double>();
        config.gummel_tol = gummel_tol;
        config.lin_tol = lin_tol;
        config.output_path = out;
        const StudyReport report = run_study(config);
        if (!out.empty()) write_csv(report, config, out);
        py::list rows;
        for (const auto& row : report.rows) rows.append(record_to_dict(row));
        return rows;
      },
      py::arg("method"), py::arg("m_list"),
      py::arg("m_coarse") = std::vector<int>{}, py::arg("sqrt_pairing") = false,
      py::arg("final_time") = 0.5, py::arg("tau") = py::none(),
      py::arg("gummel_tol") = 1e-6, py::arg("lin_tol") = 1e-8,
      py::arg("out") = std::string(),
      "Run a convergence study; one dict per mesh row");

#ifdef PNP2G_VERSION
  m.attr("__version__") = PNP2G_VERSION;
#else
  m.attr("__version__") = "dev";
#endif
}
