#include "pnp2g/pnp.hpp"

#include <chrono>
#include <cmath>
#include <future>

namespace pnp2g {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// L2 norm of the FE function with coefficient vector d (mass-matrix inner
// product), or the plain coefficient norm for the euclidean option.
double difference_norm(const SparseMatrix& mass, std::span<const double> a,
                       std::span<const double> b, GummelNorm norm) {
  std::vector<double> d(a.size());
  for (size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
  if (norm == GummelNorm::euclidean) {
    double sum = 0.0;
    for (double v : d) sum += v * v;
    return std::sqrt(sum);
  }
  const std::vector<double> md = spmv(mass, d);
  double sum = 0.0;
  for (size_t i = 0; i < d.size(); ++i) sum += d[i] * md[i];
  return std::sqrt(sum);
}

void require_same_mesh(const Mesh& mesh, const FeFunction& f,
                       const char* what) {
  if (!f.mesh || f.mesh->m != mesh.m) {
    throw std::invalid_argument(std::string(what) +
                                ": function lives on another mesh");
  }
}

}  // namespace

PnpState PnpState::zero(std::shared_ptr<const Mesh> mesh, double t) {
  PnpState s;
  s.t = t;
  s.p1 = FeFunction::zero(mesh);
  s.p2 = FeFunction::zero(mesh);
  s.phi = FeFunction::zero(std::move(mesh));
  return s;
}

void StepStats::accumulate(const StepStats& other) {
  gummel_iterations += other.gummel_iterations;
  linear_solve_count += other.linear_solve_count;
  wall_seconds += other.wall_seconds;
}

TimeGrid TimeGrid::from_step_count(double T, int n_steps) {
  if (n_steps < 0) throw std::invalid_argument("TimeGrid: n_steps < 0");
  TimeGrid grid;
  grid.n_steps = n_steps;
  grid.T = n_steps > 0 ? T : 0.0;
  grid.tau = n_steps > 0 ? T / n_steps : 0.0;
  return grid;
}

TimeGrid TimeGrid::square_rule(double T, int m) {
  const int n = static_cast<int>(std::max(1L, std::lround(T * m * m)));
  return from_step_count(T, n);
}

TimeGrid TimeGrid::from_tau_hint(double T, double tau) {
  if (!(tau > 0.0)) throw std::invalid_argument("TimeGrid: tau must be > 0");
  const int n = static_cast<int>(std::max(1L, std::lround(T / tau)));
  return from_step_count(T, n);
}

Method method_from_string(const std::string& name) {
  if (name == "fem") return Method::fem;
  if (name == "tg-semi") return Method::tg_semi;
  if (name == "tg-full") return Method::tg_full;
  throw std::invalid_argument("unknown method: " + name);
}

std::string method_name(Method method) {
  switch (method) {
    case Method::fem: return "fem";
    case Method::tg_semi: return "tg-semi";
    case Method::tg_full: return "tg-full";
  }
  return "?";
}

FeFunction solve_poisson(const std::shared_ptr<const Mesh>& mesh,
                         const FeFunction& p1, const FeFunction& p2,
                         const ProblemSpec& problem, double t, double tol) {
  require_same_mesh(*mesh, p1, "solve_poisson");
  require_same_mesh(*mesh, p2, "solve_poisson");

  const SparseMatrix stiffness = assemble_stiffness(*mesh);
  const SparseMatrix mass = assemble_mass(*mesh);

  const int n = mesh->node_count();
  std::vector<double> charge(n);
  for (int i = 0; i < n; ++i) {
    charge[i] = problem.q1 * p1.coeffs[i] + problem.q2 * p2.coeffs[i];
  }
  std::vector<double> rhs = spmv(mass, charge);
  const std::vector<double> load = assemble_load(*mesh, problem.f3, t);
  for (int i = 0; i < n; ++i) rhs[i] += load[i];

  const std::vector<int> bnodes = boundary_nodes(*mesh);
  auto [a, b] = apply_dirichlet(stiffness, rhs, bnodes);
  auto [x, report] = solve_spd(a, b, tol);

  FeFunction phi;
  phi.mesh = mesh;
  phi.coeffs = std::move(x);
  return phi;
}

FeFunction solve_np(const std::shared_ptr<const Mesh>& mesh,
                    const FeFunction& p_prev, const FeFunction& phi, double q,
                    const ScalarField& f, double tau, double t_next,
                    double tol) {
  if (!(tau > 0.0)) throw std::invalid_argument("solve_np: tau must be > 0");
  require_same_mesh(*mesh, p_prev, "solve_np");
  require_same_mesh(*mesh, phi, "solve_np");

  const SparseMatrix stiffness = assemble_stiffness(*mesh);
  const SparseMatrix mass = assemble_mass(*mesh);
  const SparseMatrix drift = assemble_drift(*mesh, phi, q);
  const SparseMatrix system = add(add(mass, stiffness, 1.0 / tau, 1.0), drift);

  std::vector<double> rhs = spmv(mass, p_prev.coeffs);
  const std::vector<double> load = assemble_load(*mesh, f, t_next);
  const int n = mesh->node_count();
  for (int i = 0; i < n; ++i) rhs[i] = rhs[i] / tau + load[i];

  const std::vector<int> bnodes = boundary_nodes(*mesh);
  auto [a, b] = apply_dirichlet(system, rhs, bnodes);
  auto [x, report] = solve_nonsymmetric(a, b, tol);

  FeFunction p;
  p.mesh = mesh;
  p.coeffs = std::move(x);
  return p;
}

std::pair<PnpState, StepStats> gummel_step(const PnpState& state,
                                           const ProblemSpec& problem,
                                           double tau,
                                           const SolverOptions& options,
                                           const GummelObserver& observer,
                                           const PnpState* initial_iterate) {
  const auto start = Clock::now();
  const auto& mesh = state.p1.mesh;
  const double t_next = state.t + tau;
  const SparseMatrix mass = assemble_mass(*mesh);

  FeFunction p1 = initial_iterate ? initial_iterate->p1 : state.p1;
  FeFunction p2 = initial_iterate ? initial_iterate->p2 : state.p2;
  FeFunction phi = initial_iterate ? initial_iterate->phi : state.phi;

  StepStats stats;
  for (int l = 0; l < options.max_gummel; ++l) {
    // Both transport solves see the previous iterate's potential; the
    // time-derivative data stays pinned to the previous time level.
    FeFunction p1_next = solve_np(mesh, state.p1, phi, problem.q1, problem.f1,
                                  tau, t_next, options.lin_tol);
    FeFunction p2_next = solve_np(mesh, state.p2, phi, problem.q2, problem.f2,
                                  tau, t_next, options.lin_tol);
    FeFunction phi_next =
        solve_poisson(mesh, p1_next, p2_next, problem, t_next, options.lin_tol);
    stats.linear_solve_count += 3;
    ++stats.gummel_iterations;

    const double change =
        difference_norm(mass, p1_next.coeffs, p1.coeffs, options.gummel_norm) +
        difference_norm(mass, p2_next.coeffs, p2.coeffs, options.gummel_norm) +
        difference_norm(mass, phi_next.coeffs, phi.coeffs, options.gummel_norm);
    stats.gummel_residuals.push_back(change);

    p1 = std::move(p1_next);
    p2 = std::move(p2_next);
    phi = std::move(phi_next);
    if (observer) {
      observer(stats.gummel_iterations, PnpState{t_next, p1, p2, phi});
    }
    if (change <= options.gummel_tol) {
      stats.wall_seconds = seconds_since(start);
      return {PnpState{t_next, std::move(p1), std::move(p2), std::move(phi)},
              stats};
    }
  }
  throw GummelFailure("gummel_step: no convergence within max_gummel",
                      stats.gummel_residuals);
}

namespace {

void require_nested(const PnpState& coarse_state, const PnpState& fine_state) {
  const int mc = coarse_state.p1.mesh->m;
  const int mf = fine_state.p1.mesh->m;
  if (mf % mc != 0) {
    throw std::invalid_argument("two-grid step: meshes are not nested");
  }
}

}  // namespace

std::tuple<PnpState, PnpState, StepStats> two_grid_semi_step(
    const PnpState& coarse_state, const PnpState& fine_state,
    const ProblemSpec& problem, double tau, const SolverOptions& options) {
  require_nested(coarse_state, fine_state);
  const auto start = Clock::now();

  auto [coarse_next, stats] = gummel_step(coarse_state, problem, tau, options);

  const auto& mesh = fine_state.p1.mesh;
  const double t_next = fine_state.t + tau;

  // One decoupled sweep on the fine mesh: a preliminary potential driven by
  // the transferred coarse concentrations supplies the drift for the two
  // transport solves, and a closing potential solve with the new fine
  // concentrations makes the reported pair satisfy the fine Poisson
  // equation. No fine-level iteration.
  const FeFunction p1_coarse = prolongate(coarse_next.p1, mesh);
  const FeFunction p2_coarse = prolongate(coarse_next.p2, mesh);
  const FeFunction phi_drift = solve_poisson(mesh, p1_coarse, p2_coarse,
                                             problem, t_next, options.lin_tol);
  FeFunction p1 = solve_np(mesh, fine_state.p1, phi_drift, problem.q1,
                           problem.f1, tau, t_next, options.lin_tol);
  FeFunction p2 = solve_np(mesh, fine_state.p2, phi_drift, problem.q2,
                           problem.f2, tau, t_next, options.lin_tol);
  FeFunction phi =
      solve_poisson(mesh, p1, p2, problem, t_next, options.lin_tol);
  stats.linear_solve_count += 4;
  stats.wall_seconds = seconds_since(start);

  return {std::move(coarse_next),
          PnpState{t_next, std::move(p1), std::move(p2), std::move(phi)},
          stats};
}

std::tuple<PnpState, PnpState, StepStats> two_grid_full_step(
    const PnpState& coarse_state, const PnpState& fine_state,
    const ProblemSpec& problem, double tau, const SolverOptions& options) {
  require_nested(coarse_state, fine_state);
  const auto start = Clock::now();

  auto [coarse_next, stats] = gummel_step(coarse_state, problem, tau, options);

  const auto& mesh = fine_state.p1.mesh;
  const double t_next = fine_state.t + tau;

  // Both transport solves use the transferred coarse potential and are
  // mutually independent; the fine potential closes the step.
  const FeFunction phi_coarse = prolongate(coarse_next.phi, mesh);
  FeFunction p1, p2;
  if (options.concurrent_species) {
    auto task1 = std::async(std::launch::async, [&] {
      return solve_np(mesh, fine_state.p1, phi_coarse, problem.q1, problem.f1,
                      tau, t_next, options.lin_tol);
    });
    p2 = solve_np(mesh, fine_state.p2, phi_coarse, problem.q2, problem.f2, tau,
                  t_next, options.lin_tol);
    p1 = task1.get();
  } else {
    p1 = solve_np(mesh, fine_state.p1, phi_coarse, problem.q1, problem.f1, tau,
                  t_next, options.lin_tol);
    p2 = solve_np(mesh, fine_state.p2, phi_coarse, problem.q2, problem.f2, tau,
                  t_next, options.lin_tol);
  }
  FeFunction phi =
      solve_poisson(mesh, p1, p2, problem, t_next, options.lin_tol);
  stats.linear_solve_count += 3;
  stats.wall_seconds = seconds_since(start);

  return {std::move(coarse_next),
          PnpState{t_next, std::move(p1), std::move(p2), std::move(phi)},
          stats};
}

MarchResult march(Method method, const ProblemSpec& problem, int m_fine,
                  int m_coarse, const TimeGrid& time,
                  const SolverOptions& options) {
  auto fine_mesh = std::make_shared<const Mesh>(build_uniform_mesh(m_fine));
  MarchResult result;
  result.fine = PnpState::zero(fine_mesh, 0.0);

  if (method != Method::fem) {
    if (m_coarse < 1 || m_fine % m_coarse != 0) {
      throw std::invalid_argument("march: fine mesh not nested in coarse mesh");
    }
    auto coarse_mesh = std::make_shared<const Mesh>(build_uniform_mesh(m_coarse));
    result.coarse = PnpState::zero(coarse_mesh, 0.0);
  }

  const auto start = Clock::now();
  for (int n = 0; n < time.n_steps; ++n) {
    try {
      StepStats step;
      switch (method) {
        case Method::fem: {
          auto [next, stats] = gummel_step(result.fine, problem, time.tau,
                                           options);
          result.fine = std::move(next);
          step = std::move(stats);
          break;
        }
        case Method::tg_semi: {
          auto [coarse_next, fine_next, stats] = two_grid_semi_step(
              *result.coarse, result.fine, problem, time.tau, options);
          result.coarse = std::move(coarse_next);
          result.fine = std::move(fine_next);
          step = std::move(stats);
          break;
        }
        case Method::tg_full: {
          auto [coarse_next, fine_next, stats] = two_grid_full_step(
              *result.coarse, result.fine, problem, time.tau, options);
          result.coarse = std::move(coarse_next);
          result.fine = std::move(fine_next);
          step = std::move(stats);
          break;
        }
      }
      step.gummel_residuals.clear();  // keep aggregate counters only
      result.stats.accumulate(step);
      // Pin the time stamps to the uniform grid; incremental addition would
      // drift over thousands of steps.
      result.fine.t = (n + 1) * time.tau;
      if (result.coarse) result.coarse->t = result.fine.t;
    } catch (const GummelFailure& e) {
      throw GummelFailure("step " + std::to_string(n) + ": " + e.what(),
                          e.residual_history);
    } catch (const SolveFailure& e) {
      throw SolveFailure("step " + std::to_string(n) + ": " + e.what(),
                         e.report);
    }
  }
  result.stats.wall_seconds = seconds_since(start);
  return result;
}

}  // namespace pnp2g
