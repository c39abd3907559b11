// Command line front end: convergence/timing studies of the coupled and
// two-grid PNP solvers on the manufactured benchmark, and mesh dumps.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pnp2g/mesh.hpp"
#include "pnp2g/study.hpp"

namespace {

void print_report(const pnp2g::StudyReport& report,
                  const pnp2g::RunConfig& config) {
  pnp2g::write_csv(report, config, std::cout);
  for (const auto& row : report.rows) {
    if (row.failed) {
      std::fprintf(stderr, "row h=%g failed: %s\n", row.record.h,
                   row.message.c_str());
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite element and two-grid solvers for the time-dependent "
               "Poisson-Nernst-Planck system on the unit square"};
  app.require_subcommand(1);

  pnp2g::RunConfig config;
  std::string method = "fem";
  std::string pairing;
  std::string gummel_norm = "l2";
  double tau_value = 0.0;

  CLI::App* run = app.add_subcommand(
      "run", "March the manufactured benchmark over a mesh list and emit a "
             "CSV convergence table");
  run->add_option("--method", method, "Scheme: fem, tg-semi or tg-full")
      ->check(CLI::IsMember({"fem", "tg-semi", "tg-full"}));
  run->add_option("--m", config.m_list,
                  "Fine-mesh subdivisions per axis (repeat or comma list)")
      ->delimiter(',');
  run->add_option("--m-coarse", config.m_coarse_list,
                  "Coarse-mesh subdivisions for the two-grid schemes")
      ->delimiter(',');
  run->add_option("--pairing", pairing,
                  "\"sqrt\": pair every coarse mesh H with h = H^2")
      ->check(CLI::IsMember({"sqrt"}));
  run->add_option("--final-time", config.final_time, "Final time T");
  run->add_option("--tau", tau_value,
                  "Explicit time step (default: tau = h^2 rule)");
  run->add_option("--gummel-tol", config.gummel_tol,
                  "Nonlinear iteration tolerance");
  run->add_option("--lin-tol", config.lin_tol,
                  "Linear residual tolerance");
  run->add_option("--gummel-norm", gummel_norm,
                  "Norm for the nonlinear stopping rule: l2 or euclidean")
      ->check(CLI::IsMember({"l2", "euclidean"}));
  run->add_option("--max-gummel", config.max_gummel,
                  "Cap on nonlinear iterations per step");
  std::string out_path;
  run->add_option("--out", out_path, "CSV output path (in addition to stdout)");

  CLI::App* dump = app.add_subcommand("dump-mesh",
                                      "Write the uniform triangulation as "
                                      "plain text");
  int dump_m = 1;
  std::string dump_path;
  dump->add_option("--m", dump_m, "Subdivisions per axis")->required();
  dump->add_option("--out", dump_path, "Output path (default: stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      config.method = pnp2g::method_from_string(method);
      config.sqrt_pairing = pairing == "sqrt";
      if (tau_value > 0.0) config.tau = tau_value;
      config.gummel_norm = gummel_norm == "euclidean"
                               ? pnp2g::GummelNorm::euclidean
                               : pnp2g::GummelNorm::l2;
      config.output_path = out_path;

      const pnp2g::StudyReport report = pnp2g::run_study(config);
      print_report(report, config);
      if (!out_path.empty()) pnp2g::write_csv(report, config, out_path);
      return report.any_failed() ? 1 : 0;
    }

    const pnp2g::Mesh mesh = pnp2g::build_uniform_mesh(dump_m);
    if (dump_path.empty()) {
      pnp2g::write_mesh_dump(mesh, std::cout);
    } else {
      std::ofstream file(dump_path);
      if (!file) {
        std::fprintf(stderr, "cannot open %s\n", dump_path.c_str());
        return 1;
      }
      pnp2g::write_mesh_dump(mesh, file);
    }
    return 0;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
