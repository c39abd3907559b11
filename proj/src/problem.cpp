#include "pnp2g/problem.hpp"

#include <cmath>
#include <numbers>

namespace pnp2g {

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

ProblemSpec make_manufactured_problem() {
  ProblemSpec p;
  p.q1 = 1.0;
  p.q2 = -1.0;
  p.final_time = 0.5;

  p.exact_p1 = [](double x, double y, double t) {
    return std::sin(t) * std::sin(2 * kPi * x) * std::sin(2 * kPi * y);
  };
  p.exact_p2 = [](double x, double y, double t) {
    return std::sin(t) * std::sin(3 * kPi * x) * std::sin(3 * kPi * y);
  };
  p.exact_phi = [](double x, double y, double t) {
    return (1.0 - std::exp(-t)) * std::sin(kPi * x) * std::sin(kPi * y);
  };

  p.exact_grad_p1 = [](double x, double y, double t) -> std::array<double, 2> {
    const double s = std::sin(t);
    return {s * 2 * kPi * std::cos(2 * kPi * x) * std::sin(2 * kPi * y),
            s * 2 * kPi * std::sin(2 * kPi * x) * std::cos(2 * kPi * y)};
  };
  p.exact_grad_p2 = [](double x, double y, double t) -> std::array<double, 2> {
    const double s = std::sin(t);
    return {s * 3 * kPi * std::cos(3 * kPi * x) * std::sin(3 * kPi * y),
            s * 3 * kPi * std::sin(3 * kPi * x) * std::cos(3 * kPi * y)};
  };
  p.exact_grad_phi = [](double x, double y, double t) -> std::array<double, 2> {
    const double g = 1.0 - std::exp(-t);
    return {g * kPi * std::cos(kPi * x) * std::sin(kPi * y),
            g * kPi * std::sin(kPi * x) * std::cos(kPi * y)};
  };

  // Sources obtained by substituting the exact fields into the system:
  //   f1 = dt(p1) - lap(p1) - div(p1 grad(phi))
  //   f2 = dt(p2) - lap(p2) + div(p2 grad(phi))
  //   f3 = -lap(phi) - (p1 - p2)
  p.f1 = [](double x, double y, double t) {
    const double s = std::sin(t);
    const double c = std::cos(t);
    const double g = 1.0 - std::exp(-t);
    const double s2x = std::sin(2 * kPi * x), c2x = std::cos(2 * kPi * x);
    const double s2y = std::sin(2 * kPi * y), c2y = std::cos(2 * kPi * y);
    const double sx = std::sin(kPi * x), cx = std::cos(kPi * x);
    const double sy = std::sin(kPi * y), cy = std::cos(kPi * y);
    const double pi2 = kPi * kPi;
    return c * s2x * s2y + 8 * pi2 * s * s2x * s2y -
           2 * pi2 * s * g * (c2x * cx * s2y * sy + s2x * sx * c2y * cy) +
           2 * pi2 * s * g * s2x * s2y * sx * sy;
  };
  p.f2 = [](double x, double y, double t) {
    const double s = std::sin(t);
    const double c = std::cos(t);
    const double g = 1.0 - std::exp(-t);
    const double s3x = std::sin(3 * kPi * x), c3x = std::cos(3 * kPi * x);
    const double s3y = std::sin(3 * kPi * y), c3y = std::cos(3 * kPi * y);
    const double sx = std::sin(kPi * x), cx = std::cos(kPi * x);
    const double sy = std::sin(kPi * y), cy = std::cos(kPi * y);
    const double pi2 = kPi * kPi;
    return c * s3x * s3y + 18 * pi2 * s * s3x * s3y +
           3 * pi2 * s * g * (c3x * cx * s3y * sy + s3x * sx * c3y * cy) -
           2 * pi2 * s * g * s3x * s3y * sx * sy;
  };
  p.f3 = [](double x, double y, double t) {
    const double s = std::sin(t);
    const double g = 1.0 - std::exp(-t);
    const double pi2 = kPi * kPi;
    return 2 * pi2 * g * std::sin(kPi * x) * std::sin(kPi * y) -
           s * (std::sin(2 * kPi * x) * std::sin(2 * kPi * y) -
                std::sin(3 * kPi * x) * std::sin(3 * kPi * y));
  };
  return p;
}

}  // namespace pnp2g
