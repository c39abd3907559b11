#pragma once

#include <optional>

#include "pnp2g/fem.hpp"

namespace pnp2g {

/// L2 norm of (f - exact(., t)), degree-4 quadrature per triangle.
double l2_error(const FeFunction& f, const ScalarField& exact, double t);

/// Full H1 norm of the error: sqrt(L2^2 + |.|_1^2) with the seminorm taken
/// against exact_grad, degree-4 quadrature.
double h1_error(const FeFunction& f, const ScalarField& exact,
                const VectorField& exact_grad, double t);

/// log(err_coarse/err_fine) / log(h_coarse/h_fine); all inputs positive and
/// h_fine < h_coarse, else std::invalid_argument.
double convergence_order(double err_coarse, double err_fine, double h_coarse,
                         double h_fine);

/// One line of a convergence table: mesh sizes, the six error norms and,
/// past the first line, the observed orders.
struct ErrorRecord {
  double h = 0.0;
  std::optional<double> H;
  double err_phi_l2 = 0.0, err_p1_l2 = 0.0, err_p2_l2 = 0.0;
  double err_phi_h1 = 0.0, err_p1_h1 = 0.0, err_p2_h1 = 0.0;
  std::optional<double> order_phi_l2, order_p1_l2, order_p2_l2;
  std::optional<double> order_phi_h1, order_p1_h1, order_p2_h1;
};

}  // namespace pnp2g
