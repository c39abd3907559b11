#pragma once

#include "pnp2g/fem.hpp"

namespace pnp2g {

/// Data defining one PNP test problem on the unit square with homogeneous
/// Dirichlet boundaries: species charges, source terms, and the exact fields
/// (with gradients) used for error measurement.
struct ProblemSpec {
  double q1 = 1.0;
  double q2 = -1.0;
  ScalarField f1, f2, f3;
  ScalarField exact_p1, exact_p2, exact_phi;
  VectorField exact_grad_p1, exact_grad_p2, exact_grad_phi;
  double final_time = 0.5;
};

/// Manufactured benchmark problem: charges +1/-1, final time 0.5,
///   p1 = sin(t) sin(2 pi x) sin(2 pi y)
///   p2 = sin(t) sin(3 pi x) sin(3 pi y)
///   phi = (1 - exp(-t)) sin(pi x) sin(pi y)
/// with source terms in closed form so the exact fields solve the system.
ProblemSpec make_manufactured_problem();

}  // namespace pnp2g
