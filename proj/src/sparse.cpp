#include "pnp2g/sparse.hpp"

#include <algorithm>
#include <cmath>

namespace pnp2g {

SparseMatrix SparseMatrix::from_triplets(int nrows, int ncols,
                                         std::vector<Triplet> triplets) {
  for (const auto& t : triplets) {
    if (t.row < 0 || t.row >= nrows || t.col < 0 || t.col >= ncols) {
      throw std::invalid_argument("from_triplets: index out of range");
    }
  }
  // Stable sort keeps the summation order of duplicates deterministic.
  std::stable_sort(triplets.begin(), triplets.end(),
                   [](const Triplet& a, const Triplet& b) {
                     return a.row != b.row ? a.row < b.row : a.col < b.col;
                   });

  SparseMatrix a;
  a.nrows = nrows;
  a.ncols = ncols;
  a.row_offsets.assign(static_cast<size_t>(nrows) + 1, 0);
  a.col_indices.reserve(triplets.size());
  a.values.reserve(triplets.size());

  size_t k = 0;
  for (int row = 0; row < nrows; ++row) {
    while (k < triplets.size() && triplets[k].row == row) {
      const int col = triplets[k].col;
      double sum = 0.0;
      while (k < triplets.size() && triplets[k].row == row &&
             triplets[k].col == col) {
        sum += triplets[k].value;
        ++k;
      }
      a.col_indices.push_back(col);
      a.values.push_back(sum);
    }
    a.row_offsets[row + 1] = static_cast<int>(a.values.size());
  }
  return a;
}

SparseMatrix SparseMatrix::identity(int n) {
  SparseMatrix a;
  a.nrows = a.ncols = n;
  a.row_offsets.resize(static_cast<size_t>(n) + 1);
  a.col_indices.resize(n);
  a.values.assign(n, 1.0);
  for (int i = 0; i <= n; ++i) a.row_offsets[i] = i;
  for (int i = 0; i < n; ++i) a.col_indices[i] = i;
  return a;
}

double SparseMatrix::at(int r, int c) const {
  for (int k = row_offsets[r]; k < row_offsets[r + 1]; ++k) {
    if (col_indices[k] == c) return values[k];
  }
  return 0.0;
}

SparseMatrix add(const SparseMatrix& a, const SparseMatrix& b, double alpha,
                 double beta) {
  if (a.nrows != b.nrows || a.ncols != b.ncols) {
    throw std::invalid_argument("add: shape mismatch");
  }
  SparseMatrix c;
  c.nrows = a.nrows;
  c.ncols = a.ncols;
  c.row_offsets.assign(static_cast<size_t>(a.nrows) + 1, 0);
  c.col_indices.reserve(a.values.size() + b.values.size());
  c.values.reserve(a.values.size() + b.values.size());

  for (int row = 0; row < a.nrows; ++row) {
    int ka = a.row_offsets[row];
    int kb = b.row_offsets[row];
    const int ea = a.row_offsets[row + 1];
    const int eb = b.row_offsets[row + 1];
    while (ka < ea || kb < eb) {
      const int ca = ka < ea ? a.col_indices[ka] : a.ncols;
      const int cb = kb < eb ? b.col_indices[kb] : a.ncols;
      if (ca < cb) {
        c.col_indices.push_back(ca);
        c.values.push_back(alpha * a.values[ka++]);
      } else if (cb < ca) {
        c.col_indices.push_back(cb);
        c.values.push_back(beta * b.values[kb++]);
      } else {
        c.col_indices.push_back(ca);
        c.values.push_back(alpha * a.values[ka++] + beta * b.values[kb++]);
      }
    }
    c.row_offsets[row + 1] = static_cast<int>(c.values.size());
  }
  return c;
}

std::vector<double> spmv(const SparseMatrix& a, std::span<const double> x) {
  if (static_cast<int>(x.size()) != a.ncols) {
    throw std::invalid_argument("spmv: dimension mismatch");
  }
  std::vector<double> y(a.nrows, 0.0);
  for (int row = 0; row < a.nrows; ++row) {
    double sum = 0.0;
    for (int k = a.row_offsets[row]; k < a.row_offsets[row + 1]; ++k) {
      sum += a.values[k] * x[a.col_indices[k]];
    }
    y[row] = sum;
  }
  return y;
}

namespace {

double norm2(std::span<const double> v) {
  double sum = 0.0;
  for (double x : v) sum += x * x;
  return std::sqrt(sum);
}

double dot(std::span<const double> a, std::span<const double> b) {
  double sum = 0.0;
  for (size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
  return sum;
}

std::vector<double> inverse_diagonal(const SparseMatrix& a) {
  std::vector<double> inv(a.nrows, 1.0);
  for (int row = 0; row < a.nrows; ++row) {
    const double d = a.at(row, row);
    if (d != 0.0) inv[row] = 1.0 / d;
  }
  return inv;
}

std::vector<double> residual(const SparseMatrix& a, std::span<const double> b,
                             std::span<const double> x) {
  std::vector<double> r = spmv(a, x);
  for (size_t i = 0; i < r.size(); ++i) r[i] = b[i] - r[i];
  return r;
}

int resolve_max_iter(int max_iter, int n) {
  return max_iter > 0 ? max_iter : 10 * n;
}

}  // namespace

std::pair<std::vector<double>, SolveReport> solve_spd(const SparseMatrix& a,
                                                      std::span<const double> b,
                                                      double tol,
                                                      int max_iter) {
  if (a.nrows != a.ncols || static_cast<int>(b.size()) != a.nrows) {
    throw std::invalid_argument("solve_spd: dimension mismatch");
  }
  if (!(tol > 0.0)) throw std::invalid_argument("solve_spd: tol must be > 0");

  const int n = a.nrows;
  const int iter_budget = resolve_max_iter(max_iter, n);
  const std::vector<double> dinv = inverse_diagonal(a);

  std::vector<double> x(n, 0.0);
  SolveReport report;

  // Outer loop restarts from the explicitly recomputed residual so the
  // reported convergence always reflects ||b - Ax||.
  while (true) {
    std::vector<double> r = residual(a, b, x);
    report.final_residual_norm = norm2(r);
    if (report.final_residual_norm <= tol) {
      report.converged = true;
      return {std::move(x), report};
    }
    if (report.iterations >= iter_budget) break;

    std::vector<double> z(n);
    for (int i = 0; i < n; ++i) z[i] = dinv[i] * r[i];
    std::vector<double> p = z;
    double rz = dot(r, z);
    bool recurred = false;

    while (report.iterations < iter_budget) {
      const std::vector<double> ap = spmv(a, p);
      const double pap = dot(p, ap);
      if (pap <= 0.0) break;  // not SPD or exhausted search directions
      const double alpha = rz / pap;
      for (int i = 0; i < n; ++i) x[i] += alpha * p[i];
      for (int i = 0; i < n; ++i) r[i] -= alpha * ap[i];
      ++report.iterations;
      recurred = true;
      const double rnorm = norm2(r);
      if (rnorm <= tol) break;
      for (int i = 0; i < n; ++i) z[i] = dinv[i] * r[i];
      const double rz_next = dot(r, z);
      const double beta = rz_next / rz;
      rz = rz_next;
      for (int i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
    }
    if (!recurred) break;  // no progress possible
  }

  throw SolveFailure("solve_spd: conjugate gradients did not converge", report);
}

std::pair<std::vector<double>, SolveReport> solve_nonsymmetric(
    const SparseMatrix& a, std::span<const double> b, double tol,
    int max_iter) {
  if (a.nrows != a.ncols || static_cast<int>(b.size()) != a.nrows) {
    throw std::invalid_argument("solve_nonsymmetric: dimension mismatch");
  }
  if (!(tol > 0.0)) {
    throw std::invalid_argument("solve_nonsymmetric: tol must be > 0");
  }

  const int n = a.nrows;
  const int iter_budget = resolve_max_iter(max_iter, n);
  const std::vector<double> dinv = inverse_diagonal(a);

  std::vector<double> x(n, 0.0);
  SolveReport report;

  // BiCGSTAB with right Jacobi preconditioning; the shadow residual resets
  // on (near-)breakdown, which keeps the method deterministic.
  while (true) {
    std::vector<double> r = residual(a, b, x);
    report.final_residual_norm = norm2(r);
    if (report.final_residual_norm <= tol) {
      report.converged = true;
      return {std::move(x), report};
    }
    if (report.iterations >= iter_budget) break;

    const std::vector<double> rhat = r;
    std::vector<double> p = r;
    std::vector<double> v(n, 0.0);
    double rho = dot(rhat, r);
    bool recurred = false;
    if (rho == 0.0) break;

    while (report.iterations < iter_budget) {
      std::vector<double> phat(n);
      for (int i = 0; i < n; ++i) phat[i] = dinv[i] * p[i];
      v = spmv(a, phat);
      const double rhat_v = dot(rhat, v);
      if (rhat_v == 0.0) break;  // breakdown: restart outer loop
      const double alpha = rho / rhat_v;

      std::vector<double> s(n);
      for (int i = 0; i < n; ++i) s[i] = r[i] - alpha * v[i];
      ++report.iterations;
      recurred = true;
      if (norm2(s) <= tol) {
        for (int i = 0; i < n; ++i) x[i] += alpha * phat[i];
        break;
      }

      std::vector<double> shat(n);
      for (int i = 0; i < n; ++i) shat[i] = dinv[i] * s[i];
      const std::vector<double> t = spmv(a, shat);
      const double tt = dot(t, t);
      if (tt == 0.0) break;
      const double omega = dot(t, s) / tt;
      if (omega == 0.0) break;

      for (int i = 0; i < n; ++i) x[i] += alpha * phat[i] + omega * shat[i];
      for (int i = 0; i < n; ++i) r[i] = s[i] - omega * t[i];
      if (norm2(r) <= tol) break;

      const double rho_next = dot(rhat, r);
      if (rho_next == 0.0) break;
      const double beta = (rho_next / rho) * (alpha / omega);
      rho = rho_next;
      for (int i = 0; i < n; ++i) p[i] = r[i] + beta * (p[i] - omega * v[i]);
    }
    if (!recurred) break;
  }

  throw SolveFailure("solve_nonsymmetric: BiCGSTAB did not converge", report);
}

}  // namespace pnp2g
