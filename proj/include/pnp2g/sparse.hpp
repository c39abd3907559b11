#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace pnp2g {

struct Triplet {
  int row;
  int col;
  double value;
};

/// Compressed-row sparse matrix. Within each row column indices are strictly
/// increasing and duplicates from assembly are summed on construction.
struct SparseMatrix {
  int nrows = 0;
  int ncols = 0;
  std::vector<int> row_offsets;  // size nrows+1
  std::vector<int> col_indices;
  std::vector<double> values;

  static SparseMatrix from_triplets(int nrows, int ncols,
                                    std::vector<Triplet> triplets);
  static SparseMatrix identity(int n);

  int nnz() const { return static_cast<int>(values.size()); }

  /// Stored value at (r, c), or 0 when the entry is not stored.
  double at(int r, int c) const;
};

/// C = alpha*A + beta*B for matrices of identical shape.
SparseMatrix add(const SparseMatrix& a, const SparseMatrix& b,
                 double alpha = 1.0, double beta = 1.0);

std::vector<double> spmv(const SparseMatrix& a, std::span<const double> x);

struct SolveReport {
  int iterations = 0;
  double final_residual_norm = 0.0;
  bool converged = false;
};

/// Thrown when an iterative solve does not reach the requested residual.
class SolveFailure : public std::runtime_error {
 public:
  SolveFailure(const std::string& what, SolveReport report)
      : std::runtime_error(what), report(report) {}
  SolveReport report;
};

/// Jacobi-preconditioned conjugate gradients for symmetric positive definite
/// systems. Stops when the Euclidean residual ||b - Ax|| drops to tol;
/// max_iter <= 0 means 10*n. Starts from x = 0 and is fully deterministic.
std::pair<std::vector<double>, SolveReport> solve_spd(const SparseMatrix& a,
                                                      std::span<const double> b,
                                                      double tol = 1e-8,
                                                      int max_iter = -1);

/// Jacobi-preconditioned BiCGSTAB for square nonsymmetric systems, same
/// termination rule and determinism guarantees as solve_spd.
std::pair<std::vector<double>, SolveReport> solve_nonsymmetric(
    const SparseMatrix& a, std::span<const double> b, double tol = 1e-8,
    int max_iter = -1);

}  // namespace pnp2g
