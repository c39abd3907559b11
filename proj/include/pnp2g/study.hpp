#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "pnp2g/error_norms.hpp"
#include "pnp2g/pnp.hpp"

namespace pnp2g {

/// Configuration of a convergence/timing study over a list of meshes.
struct RunConfig {
  Method method = Method::fem;
  std::vector<int> m_list;         // fine subdivisions
  std::vector<int> m_coarse_list;  // per-row coarse subdivisions (two-grid)
  bool sqrt_pairing = false;       // m_fine = m_coarse^2
  double final_time = 0.5;
  std::optional<double> tau;       // unset: tau = h^2 rule
  double gummel_tol = 1e-6;
  double lin_tol = 1e-8;
  GummelNorm gummel_norm = GummelNorm::l2;
  int max_gummel = 100;
  std::string output_path;  // empty: no CSV written by run_study callers
};

struct StudyRow {
  ErrorRecord record;
  StepStats stats;
  double tau = 0.0;
  int n_steps = 0;
  bool failed = false;
  std::string message;  // failure diagnostic
};

struct StudyReport {
  std::vector<StudyRow> rows;
  bool any_failed() const;
};

/// Marches every configured mesh (pair) to the final time and fills one row
/// per mesh with the six error norms and observed orders. A failing row is
/// marked and the study continues. Throws std::invalid_argument for
/// configurations violating the pairing rules.
StudyReport run_study(const RunConfig& config);

/// CSV schema (fixed header; reals in scientific notation, 6 significant
/// digits; absent orders/H as empty fields). Failed rows are omitted.
void write_csv(const StudyReport& report, const RunConfig& config,
               std::ostream& out);
void write_csv(const StudyReport& report, const RunConfig& config,
               const std::string& path);

}  // namespace pnp2g
