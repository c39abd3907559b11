#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "pnp2g/fem.hpp"
#include "pnp2g/problem.hpp"

namespace pnp2g {

/// Concentrations and potential at one time level, all on a common mesh and
/// with exactly zero boundary coefficients.
struct PnpState {
  double t = 0.0;
  FeFunction p1, p2, phi;

  static PnpState zero(std::shared_ptr<const Mesh> mesh, double t = 0.0);
};

/// Per-step (or aggregated) work counters.
struct StepStats {
  int gummel_iterations = 0;
  int linear_solve_count = 0;
  double wall_seconds = 0.0;
  /// Stopping-criterion value after each nonlinear iteration of this step.
  std::vector<double> gummel_residuals;

  void accumulate(const StepStats& other);
};

/// Uniform partition of [0, T]: n_steps * tau == T.
struct TimeGrid {
  double tau = 0.0;
  int n_steps = 0;
  double T = 0.0;

  static TimeGrid from_step_count(double T, int n_steps);
  /// tau = h^2 rule: n_steps = round(T * m^2), tau = T / n_steps.
  static TimeGrid square_rule(double T, int m);
  /// Nearest uniform partition to a requested step size.
  static TimeGrid from_tau_hint(double T, double tau);
};

enum class GummelNorm { l2, euclidean };

struct SolverOptions {
  double gummel_tol = 1e-6;
  int max_gummel = 100;
  double lin_tol = 1e-8;
  GummelNorm gummel_norm = GummelNorm::l2;
  /// Run the two independent species solves of the fully decoupled fine step
  /// on separate threads. Results are identical either way.
  bool concurrent_species = false;
};

enum class Method { fem, tg_semi, tg_full };

Method method_from_string(const std::string& name);
std::string method_name(Method method);

/// Thrown when the nonlinear iteration fails to converge.
class GummelFailure : public std::runtime_error {
 public:
  GummelFailure(const std::string& what, std::vector<double> history)
      : std::runtime_error(what), residual_history(std::move(history)) {}
  std::vector<double> residual_history;
};

/// Potential solve: S phi = M (q1 p1 + q2 p2) + load(f3, t), Dirichlet
/// eliminated, conjugate gradients.
FeFunction solve_poisson(const std::shared_ptr<const Mesh>& mesh,
                         const FeFunction& p1, const FeFunction& p2,
                         const ProblemSpec& problem, double t,
                         double tol = 1e-8);

/// Transport solve for one species with frozen potential:
/// (M/tau + S + D(phi, q)) p = M p_prev / tau + load(f, t_next).
FeFunction solve_np(const std::shared_ptr<const Mesh>& mesh,
                    const FeFunction& p_prev, const FeFunction& phi, double q,
                    const ScalarField& f, double tau, double t_next,
                    double tol = 1e-8);

using GummelObserver = std::function<void(int iteration, const PnpState&)>;

/// One backward-Euler step of the coupled system, resolved by the nonlinear
/// fixed-point iteration: each sweep solves both transport equations with
/// the previous potential, then the potential with the new concentrations,
/// until the summed L2 change of the three fields drops to gummel_tol.
/// initial_iterate overrides the default start (the previous time level).
std::pair<PnpState, StepStats> gummel_step(
    const PnpState& state, const ProblemSpec& problem, double tau,
    const SolverOptions& options = {}, const GummelObserver& observer = nullptr,
    const PnpState* initial_iterate = nullptr);

/// Semi-decoupled two-grid step: a coupled coarse step, then one decoupled
/// sweep on the fine mesh — a preliminary potential solve driven by the
/// transferred coarse concentrations supplies the drift for the two species
/// solves, and a closing potential solve uses the new fine concentrations.
std::tuple<PnpState, PnpState, StepStats> two_grid_semi_step(
    const PnpState& coarse_state, const PnpState& fine_state,
    const ProblemSpec& problem, double tau, const SolverOptions& options = {});

/// Fully decoupled two-grid step: a coupled coarse step, then on the fine
/// mesh the two species solves with the transferred coarse potential
/// (mutually independent), and last the potential solve with the new fine
/// concentrations.
std::tuple<PnpState, PnpState, StepStats> two_grid_full_step(
    const PnpState& coarse_state, const PnpState& fine_state,
    const ProblemSpec& problem, double tau, const SolverOptions& options = {});

struct MarchResult {
  PnpState fine;
  std::optional<PnpState> coarse;
  StepStats stats;
};

/// Advances all fields from zero initial data at t = 0 through time.n_steps
/// steps of the chosen scheme. m_coarse is ignored for Method::fem; wall
/// time covers the stepping loop only.
MarchResult march(Method method, const ProblemSpec& problem, int m_fine,
                  int m_coarse, const TimeGrid& time,
                  const SolverOptions& options = {});

}  // namespace pnp2g
