#include "pnp2g/error_norms.hpp"

#include <cmath>
#include <stdexcept>

namespace pnp2g {

namespace {

// Per-triangle quadrature of the squared error, accumulated in triangle
// index order for a deterministic reduction.
template <typename SquaredIntegrand>
double accumulate_squared(const Mesh& mesh, const SquaredIntegrand& term) {
  const QuadratureRule& rule = QuadratureRule::degree4();
  double total = 0.0;
  for (int t = 0; t < mesh.triangle_count(); ++t) {
    const double area = mesh.triangle_area(t);
    double local = 0.0;
    for (size_t q = 0; q < rule.points.size(); ++q) {
      local += rule.weights[q] * term(t, rule.points[q]);
    }
    total += area * local;
  }
  return total;
}

}  // namespace

double l2_error(const FeFunction& f, const ScalarField& exact, double t) {
  const Mesh& mesh = *f.mesh;
  const double sq = accumulate_squared(
      mesh, [&](int tri, const std::array<double, 3>& lambda) {
        const auto& nodes = mesh.triangles[tri];
        const auto& a = mesh.nodes[nodes[0]];
        const auto& b = mesh.nodes[nodes[1]];
        const auto& c = mesh.nodes[nodes[2]];
        const double x = lambda[0] * a[0] + lambda[1] * b[0] + lambda[2] * c[0];
        const double y = lambda[0] * a[1] + lambda[1] * b[1] + lambda[2] * c[1];
        const double fh = lambda[0] * f.coeffs[nodes[0]] +
                          lambda[1] * f.coeffs[nodes[1]] +
                          lambda[2] * f.coeffs[nodes[2]];
        const double diff = fh - exact(x, y, t);
        return diff * diff;
      });
  return std::sqrt(sq);
}

double h1_error(const FeFunction& f, const ScalarField& exact,
                const VectorField& exact_grad, double t) {
  const Mesh& mesh = *f.mesh;
  const double l2 = l2_error(f, exact, t);

  // The FE gradient is constant per triangle; compute it once per element.
  const double sq = accumulate_squared(
      mesh, [&](int tri, const std::array<double, 3>& lambda) {
        const auto& nodes = mesh.triangles[tri];
        const auto& a = mesh.nodes[nodes[0]];
        const auto& b = mesh.nodes[nodes[1]];
        const auto& c = mesh.nodes[nodes[2]];
        const double det =
            (b[0] - a[0]) * (c[1] - a[1]) - (c[0] - a[0]) * (b[1] - a[1]);
        const double gx = (f.coeffs[nodes[0]] * (b[1] - c[1]) +
                           f.coeffs[nodes[1]] * (c[1] - a[1]) +
                           f.coeffs[nodes[2]] * (a[1] - b[1])) /
                          det;
        const double gy = (f.coeffs[nodes[0]] * (c[0] - b[0]) +
                           f.coeffs[nodes[1]] * (a[0] - c[0]) +
                           f.coeffs[nodes[2]] * (b[0] - a[0])) /
                          det;
        const double x = lambda[0] * a[0] + lambda[1] * b[0] + lambda[2] * c[0];
        const double y = lambda[0] * a[1] + lambda[1] * b[1] + lambda[2] * c[1];
        const auto eg = exact_grad(x, y, t);
        const double dx = gx - eg[0];
        const double dy = gy - eg[1];
        return dx * dx + dy * dy;
      });
  return std::sqrt(l2 * l2 + sq);
}

double convergence_order(double err_coarse, double err_fine, double h_coarse,
                         double h_fine) {
  if (!(err_coarse > 0.0) || !(err_fine > 0.0) || !(h_coarse > 0.0) ||
      !(h_fine > 0.0)) {
    throw std::invalid_argument("convergence_order: inputs must be positive");
  }
  if (!(h_fine < h_coarse)) {
    throw std::invalid_argument("convergence_order: requires h_fine < h_coarse");
  }
  return std::log(err_coarse / err_fine) / std::log(h_coarse / h_fine);
}

}  // namespace pnp2g
