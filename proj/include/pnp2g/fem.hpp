#pragma once

#include <array>
#include <functional>
#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "pnp2g/mesh.hpp"
#include "pnp2g/sparse.hpp"

namespace pnp2g {

/// Scalar field (x, y, t) -> value.
using ScalarField = std::function<double(double, double, double)>;
/// Vector field (x, y, t) -> (dx, dy).
using VectorField = std::function<std::array<double, 2>(double, double, double)>;

/// Piecewise-linear finite element function: nodal coefficients over a mesh.
struct FeFunction {
  std::shared_ptr<const Mesh> mesh;
  std::vector<double> coeffs;

  static FeFunction zero(std::shared_ptr<const Mesh> mesh);
  /// Nodal interpolant of f at time t (no boundary adjustment).
  static FeFunction interpolate(std::shared_ptr<const Mesh> mesh,
                                const ScalarField& f, double t);
};

/// Quadrature rule on the reference triangle in barycentric coordinates;
/// weights sum to 1 and scale by the triangle area on use.
struct QuadratureRule {
  std::vector<std::array<double, 3>> points;
  std::vector<double> weights;
  int degree = 0;

  /// 3-point edge-midpoint rule, exact through degree 2 (assembly).
  static const QuadratureRule& midpoint();
  /// 6-point rule, exact through degree 4 (error norms).
  static const QuadratureRule& degree4();
};

/// Stiffness matrix S_jk = int grad(psi_k) . grad(psi_j) over all nodes.
SparseMatrix assemble_stiffness(const Mesh& mesh);

/// Mass matrix M_jk = int psi_k psi_j.
SparseMatrix assemble_mass(const Mesh& mesh);

/// Drift matrix D_jk = q * int psi_k (grad(phi_h) . grad(psi_j)).
SparseMatrix assemble_drift(const Mesh& mesh, const FeFunction& phi, double q);

/// Load vector b_j = int f(., t) psi_j via the assembly quadrature.
std::vector<double> assemble_load(const Mesh& mesh, const ScalarField& f,
                                  double t);

/// Symmetric elimination of homogeneous Dirichlet rows/columns: boundary
/// rows become identity rows with zero right-hand side, and couplings into
/// boundary nodes are dropped. Idempotent.
std::pair<SparseMatrix, std::vector<double>> apply_dirichlet(
    const SparseMatrix& a, std::span<const double> b,
    std::span<const int> bnodes);

double evaluate(const FeFunction& f, double x, double y);
std::array<double, 2> evaluate_gradient(const FeFunction& f, double x,
                                        double y);

/// Transfer onto a nested finer mesh (fine m divisible by coarse m). The
/// result represents the same function pointwise.
FeFunction prolongate(const FeFunction& coarse,
                      std::shared_ptr<const Mesh> fine_mesh);

}  // namespace pnp2g
