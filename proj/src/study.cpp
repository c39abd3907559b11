#include "pnp2g/study.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace pnp2g {

namespace {

// (m_fine, m_coarse) pairs for the configured study; m_coarse is 0 for the
// single-grid method.
std::vector<std::pair<int, int>> resolve_pairs(const RunConfig& config) {
  std::vector<std::pair<int, int>> pairs;
  if (config.method == Method::fem) {
    for (int m : config.m_list) pairs.emplace_back(m, 0);
    return pairs;
  }

  std::vector<int> fine = config.m_list;
  std::vector<int> coarse = config.m_coarse_list;
  if (config.sqrt_pairing) {
    if (coarse.empty() && !fine.empty()) {
      for (int m : fine) {
        int root = 1;
        while (root * root < m) ++root;
        if (root * root != m) {
          throw std::invalid_argument(
              "run_study: sqrt pairing needs square fine subdivisions");
        }
        coarse.push_back(root);
      }
    } else if (fine.empty() && !coarse.empty()) {
      for (int mc : coarse) fine.push_back(mc * mc);
    }
    if (fine.size() != coarse.size()) {
      throw std::invalid_argument("run_study: mismatched mesh lists");
    }
    for (size_t i = 0; i < fine.size(); ++i) {
      if (fine[i] != coarse[i] * coarse[i]) {
        throw std::invalid_argument(
            "run_study: sqrt pairing requires m_fine = m_coarse^2");
      }
    }
  } else {
    if (fine.size() != coarse.size()) {
      throw std::invalid_argument("run_study: mismatched mesh lists");
    }
    for (size_t i = 0; i < fine.size(); ++i) {
      if (coarse[i] < 1 || fine[i] % coarse[i] != 0) {
        throw std::invalid_argument(
            "run_study: each fine mesh must be divisible by its coarse mesh");
      }
    }
  }
  for (size_t i = 0; i < fine.size(); ++i) {
    pairs.emplace_back(fine[i], coarse[i]);
  }
  return pairs;
}

std::string format_real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.5E", v);
  return buf;
}

std::string format_optional(const std::optional<double>& v) {
  return v ? format_real(*v) : std::string();
}

}  // namespace

bool StudyReport::any_failed() const {
  for (const auto& row : rows) {
    if (row.failed) return true;
  }
  return false;
}

StudyReport run_study(const RunConfig& config) {
  const auto pairs = resolve_pairs(config);
  const ProblemSpec problem = make_manufactured_problem();

  SolverOptions options;
  options.gummel_tol = config.gummel_tol;
  options.lin_tol = config.lin_tol;
  options.gummel_norm = config.gummel_norm;
  options.max_gummel = config.max_gummel;

  StudyReport report;
  std::optional<ErrorRecord> prev_ok;
  for (const auto& [m_fine, m_coarse] : pairs) {
    StudyRow row;
    row.record.h = 1.0 / m_fine;
    if (config.method != Method::fem) row.record.H = 1.0 / m_coarse;

    TimeGrid grid = config.tau
                        ? TimeGrid::from_tau_hint(config.final_time, *config.tau)
                        : TimeGrid::square_rule(config.final_time, m_fine);
    row.tau = grid.tau;
    row.n_steps = grid.n_steps;

    try {
      MarchResult result =
          march(config.method, problem, m_fine, m_coarse, grid, options);
      const double T = result.fine.t;
      auto& rec = row.record;
      rec.err_phi_l2 = l2_error(result.fine.phi, problem.exact_phi, T);
      rec.err_p1_l2 = l2_error(result.fine.p1, problem.exact_p1, T);
      rec.err_p2_l2 = l2_error(result.fine.p2, problem.exact_p2, T);
      rec.err_phi_h1 =
          h1_error(result.fine.phi, problem.exact_phi, problem.exact_grad_phi, T);
      rec.err_p1_h1 =
          h1_error(result.fine.p1, problem.exact_p1, problem.exact_grad_p1, T);
      rec.err_p2_h1 =
          h1_error(result.fine.p2, problem.exact_p2, problem.exact_grad_p2, T);
      row.stats = result.stats;

      if (prev_ok) {
        const auto& p = *prev_ok;
        rec.order_phi_l2 =
            convergence_order(p.err_phi_l2, rec.err_phi_l2, p.h, rec.h);
        rec.order_p1_l2 =
            convergence_order(p.err_p1_l2, rec.err_p1_l2, p.h, rec.h);
        rec.order_p2_l2 =
            convergence_order(p.err_p2_l2, rec.err_p2_l2, p.h, rec.h);
        rec.order_phi_h1 =
            convergence_order(p.err_phi_h1, rec.err_phi_h1, p.h, rec.h);
        rec.order_p1_h1 =
            convergence_order(p.err_p1_h1, rec.err_p1_h1, p.h, rec.h);
        rec.order_p2_h1 =
            convergence_order(p.err_p2_h1, rec.err_p2_h1, p.h, rec.h);
      }
    } catch (const std::exception& e) {
      row.failed = true;
      row.message = e.what();
    }

    if (!row.failed) prev_ok = row.record;
    report.rows.push_back(std::move(row));
  }
  return report;
}

void write_csv(const StudyReport& report, const RunConfig& config,
               std::ostream& out) {
  out << "method,h,H,tau,n_steps,"
         "err_phi_l2,err_p1_l2,err_p2_l2,err_phi_h1,err_p1_h1,err_p2_h1,"
         "order_phi_l2,order_p1_l2,order_p2_l2,"
         "order_phi_h1,order_p1_h1,order_p2_h1,"
         "gummel_iters_total,wall_seconds\n";
  const std::string method = method_name(config.method);
  for (const auto& row : report.rows) {
    if (row.failed) continue;
    const auto& rec = row.record;
    out << method << ',' << format_real(rec.h) << ','
        << format_optional(rec.H) << ',' << format_real(row.tau) << ','
        << row.n_steps << ',' << format_real(rec.err_phi_l2) << ','
        << format_real(rec.err_p1_l2) << ',' << format_real(rec.err_p2_l2)
        << ',' << format_real(rec.err_phi_h1) << ','
        << format_real(rec.err_p1_h1) << ',' << format_real(rec.err_p2_h1)
        << ',' << format_optional(rec.order_phi_l2) << ','
        << format_optional(rec.order_p1_l2) << ','
        << format_optional(rec.order_p2_l2) << ','
        << format_optional(rec.order_phi_h1) << ','
        << format_optional(rec.order_p1_h1) << ','
        << format_optional(rec.order_p2_h1) << ','
        << row.stats.gummel_iterations << ','
        << format_real(row.stats.wall_seconds) << '\n';
  }
}

void write_csv(const StudyReport& report, const RunConfig& config,
               const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_csv: cannot open " + path);
  write_csv(report, config, out);
  out.flush();
  if (!out) throw std::runtime_error("write_csv: write failed for " + path);
}

}  // namespace pnp2g
