#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "pnp2g/error_norms.hpp"
#include "pnp2g/problem.hpp"

using namespace pnp2g;

TEST_SUITE("error_norms") {

TEST_CASE("zero function against zero field") {
  auto mesh = std::make_shared<const Mesh>(build_uniform_mesh(4));
  const FeFunction z = FeFunction::zero(mesh);
  const auto zero_field = [](double, double, double) { return 0.0; };
  const auto zero_grad = [](double, double, double) -> std::array<double, 2> {
    return {0.0, 0.0};
  };
  CHECK(l2_error(z, zero_field, 0.5) == 0.0);
  CHECK(h1_error(z, zero_field, zero_grad, 0.5) == 0.0);
}

TEST_CASE("norms of the exact potential via the analytic integrals") {
  // ||phi(., 1/2)|| = (1 - exp(-1/2))/2, seminorm = (1 - exp(-1/2)) pi/sqrt(2).
  const ProblemSpec prob = make_manufactured_problem();
  auto mesh = std::make_shared<const Mesh>(build_uniform_mesh(16));
  const FeFunction z = FeFunction::zero(mesh);
  const double g = 1.0 - std::exp(-0.5);
  const double l2_exact = 0.5 * g;
  const double semi_exact = g * M_PI / std::sqrt(2.0);
  const double h1_exact = std::hypot(l2_exact, semi_exact);

  CHECK(l2_error(z, prob.exact_phi, 0.5) ==
        doctest::Approx(l2_exact).epsilon(1e-12));
  CHECK(h1_error(z, prob.exact_phi, prob.exact_grad_phi, 0.5) ==
        doctest::Approx(h1_exact).epsilon(1e-12));
  CHECK(l2_exact == doctest::Approx(0.196735).epsilon(1e-5));
  CHECK(h1_exact == doctest::Approx(0.89594).epsilon(1e-5));
}

TEST_CASE("h1 dominates l2") {
  const ProblemSpec prob = make_manufactured_problem();
  auto mesh = std::make_shared<const Mesh>(build_uniform_mesh(8));
  const FeFunction f =
      FeFunction::interpolate(mesh, prob.exact_p2, 0.3);
  const double l2 = l2_error(f, prob.exact_p1, 0.3);
  const double h1 = h1_error(f, prob.exact_p1, prob.exact_grad_p1, 0.3);
  CHECK(h1 >= l2);
}

TEST_CASE("interpolant error decreases fourfold per mesh doubling") {
  const ProblemSpec prob = make_manufactured_problem();
  double prev = 0.0;
  for (int m : {8, 16, 32}) {
    auto mesh = std::make_shared<const Mesh>(build_uniform_mesh(m));
    const FeFunction f = FeFunction::interpolate(mesh, prob.exact_phi, 0.5);
    const double err = l2_error(f, prob.exact_phi, 0.5);
    if (prev > 0.0) {
      const double ratio = prev / err;
      CHECK(ratio > 3.6);
      CHECK(ratio < 4.4);
    }
    prev = err;
  }
}

TEST_CASE("norms do not depend on the triangle iteration order") {
  const ProblemSpec prob = make_manufactured_problem();
  auto mesh = std::make_shared<const Mesh>(build_uniform_mesh(5));
  const FeFunction f = FeFunction::interpolate(mesh, prob.exact_p1, 0.4);

  Mesh shuffled = *mesh;
  std::mt19937 rng(8);
  std::shuffle(shuffled.triangles.begin(), shuffled.triangles.end(), rng);
  FeFunction g;
  g.mesh = std::make_shared<const Mesh>(std::move(shuffled));
  g.coeffs = f.coeffs;

  const double a = l2_error(f, prob.exact_p1, 0.4);
  const double b = l2_error(g, prob.exact_p1, 0.4);
  CHECK(std::fabs(a - b) <= 1e-13 * a);
  CHECK(l2_error(f, prob.exact_p1, 0.4) == a);  // bitwise repeatable
}

TEST_CASE("convergence_order") {
  CHECK(convergence_order(7.3983e-3, 2.4124e-3, 1.0 / 9, 1.0 / 16) ==
        doctest::Approx(1.95).epsilon(0.0026));
  CHECK(convergence_order(1e-3, 1e-3, 0.5, 0.25) == 0.0);
  CHECK(convergence_order(4e-2, 1e-2, 0.2, 0.1) == doctest::Approx(2.0));
  CHECK_THROWS_AS(convergence_order(-1.0, 1e-3, 0.5, 0.25),
                  std::invalid_argument);
  CHECK_THROWS_AS(convergence_order(1e-3, 1e-3, 0.25, 0.5),
                  std::invalid_argument);
}

}  // TEST_SUITE("error_norms")
