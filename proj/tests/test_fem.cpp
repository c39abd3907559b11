#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "pnp2g/fem.hpp"
#include "pnp2g/problem.hpp"

using namespace pnp2g;

namespace {

double max_abs(const SparseMatrix& a) {
  double worst = 0.0;
  for (double v : a.values) worst = std::max(worst, std::fabs(v));
  return worst;
}

bool same_structure_and_values(const SparseMatrix& a, const SparseMatrix& b,
                               double tol = 0.0) {
  if (a.nrows != b.nrows || a.ncols != b.ncols) return false;
  if (a.row_offsets != b.row_offsets || a.col_indices != b.col_indices) {
    return false;
  }
  for (size_t k = 0; k < a.values.size(); ++k) {
    if (std::fabs(a.values[k] - b.values[k]) > tol) return false;
  }
  return true;
}

}  // namespace

TEST_SUITE("fem") {

TEST_CASE("stiffness rows sum to zero and form the five-point stencil") {
  const Mesh mesh = build_uniform_mesh(4);
  const SparseMatrix s = assemble_stiffness(mesh);
  for (int r = 0; r < s.nrows; ++r) {
    double sum = 0.0;
    for (int k = s.row_offsets[r]; k < s.row_offsets[r + 1]; ++k) {
      sum += s.values[k];
    }
    CHECK(std::fabs(sum) <= 1e-13);
  }
  // Interior node: diagonal 4, -1 to axis-aligned neighbors, 0 along the
  // cell diagonals.
  const int n = 5;
  const int center = 2 * n + 2;
  CHECK(s.at(center, center) == doctest::Approx(4.0).epsilon(1e-14));
  for (int neighbor : {center - 1, center + 1, center - n, center + n}) {
    CHECK(s.at(center, neighbor) == doctest::Approx(-1.0).epsilon(1e-14));
  }
  for (int diag : {center - n - 1, center + n + 1}) {
    CHECK(std::fabs(s.at(center, diag)) <= 1e-14);
  }
}

TEST_CASE("m=1 stiffness equals the sum of hand-computed element matrices") {
  // Lower triangle (0,1,3) and upper triangle (0,3,2) with unit legs:
  //   lower: 1/2 [[1,-1,0],[-1,2,-1],[0,-1,1]]
  //   upper: 1/2 [[1,0,-1],[0,1,-1],[-1,-1,2]]
  double expected[4][4] = {{1.0, -0.5, -0.5, 0.0},
                           {-0.5, 1.0, 0.0, -0.5},
                           {-0.5, 0.0, 1.0, -0.5},
                           {0.0, -0.5, -0.5, 1.0}};
  const SparseMatrix s = assemble_stiffness(build_uniform_mesh(1));
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) {
      CHECK(s.at(r, c) == doctest::Approx(expected[r][c]).epsilon(1e-14));
    }
  }
}

TEST_CASE("mass matrix totals the domain area and is positive definite") {
  const Mesh mesh = build_uniform_mesh(4);
  const SparseMatrix m = assemble_mass(mesh);
  double total = 0.0;
  for (double v : m.values) total += v;
  CHECK(std::fabs(total - 1.0) <= 1e-13);

  const int center = 2 * 5 + 2;
  CHECK(m.at(center, center) ==
        doctest::Approx(mesh.h() * mesh.h() / 2.0).epsilon(1e-13));

  std::mt19937 rng(321);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<double> x(m.ncols);
    for (auto& v : x) v = unit(rng);
    const auto mx = spmv(m, x);
    double quad = 0.0;
    for (size_t i = 0; i < x.size(); ++i) quad += x[i] * mx[i];
    CHECK(quad > 0.0);
  }
}

TEST_CASE("stiffness and mass are symmetric") {
  const Mesh mesh = build_uniform_mesh(5);
  for (const SparseMatrix& a : {assemble_stiffness(mesh), assemble_mass(mesh)}) {
    for (int r = 0; r < a.nrows; ++r) {
      for (int k = a.row_offsets[r]; k < a.row_offsets[r + 1]; ++k) {
        CHECK(std::fabs(a.values[k] - a.at(a.col_indices[k], r)) <= 1e-14);
      }
    }
  }
}

TEST_CASE("drift vanishes for constant potential and has zero column sums") {
  auto mesh = std::make_shared<const Mesh>(build_uniform_mesh(4));
  FeFunction constant = FeFunction::zero(mesh);
  for (auto& c : constant.coeffs) c = 2.75;
  CHECK(max_abs(assemble_drift(*mesh, constant, 1.0)) <= 1e-13);

  FeFunction phi = FeFunction::interpolate(
      mesh, [](double x, double y, double) { return x * x - 0.3 * y; }, 0.0);
  const SparseMatrix d = assemble_drift(*mesh, phi, -1.0);
  std::vector<double> colsum(d.ncols, 0.0);
  for (int r = 0; r < d.nrows; ++r) {
    for (int k = d.row_offsets[r]; k < d.row_offsets[r + 1]; ++k) {
      colsum[d.col_indices[k]] += d.values[k];
    }
  }
  for (double v : colsum) CHECK(std::fabs(v) <= 1e-13);
}

TEST_CASE("drift entries match a per-triangle quadrature oracle") {
  // phi = x gives D_jk = q int psi_k dpsi_j/dx; integrate each product with
  // the high-order oracle rule, triangle by triangle.
  auto mesh = std::make_shared<const Mesh>(build_uniform_mesh(2));
  FeFunction phi = FeFunction::interpolate(
      mesh, [](double x, double, double) { return x; }, 0.0);
  const SparseMatrix d = assemble_drift(*mesh, phi, 1.0);

  const int n = mesh->node_count();
  std::vector<std::vector<double>> expected(n, std::vector<double>(n, 0.0));
  for (int t = 0; t < mesh->triangle_count(); ++t) {
    const auto& tri = mesh->triangles[t];
    const auto& a = mesh->nodes[tri[0]];
    const auto& b = mesh->nodes[tri[1]];
    const auto& c = mesh->nodes[tri[2]];
    const double det =
        (b[0] - a[0]) * (c[1] - a[1]) - (c[0] - a[0]) * (b[1] - a[1]);
    const double dpsidx[3] = {(b[1] - c[1]) / det, (c[1] - a[1]) / det,
                              (a[1] - b[1]) / det};
    for (int j = 0; j < 3; ++j) {
      for (int k = 0; k < 3; ++k) {
        expected[tri[j]][tri[k]] += oracles::integrate_triangle(
            *mesh, t,
            [&](double, double, double l0, double l1, double l2) {
              const double psi_k = k == 0 ? l0 : (k == 1 ? l1 : l2);
              return psi_k * dpsidx[j];
            });
      }
    }
  }
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      CHECK(std::fabs(d.at(r, c) - expected[r][c]) <= 1e-13);
    }
  }
}

TEST_CASE("drift is linear in charge and potential") {
  auto mesh = std::make_shared<const Mesh>(build_uniform_mesh(3));
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  FeFunction u = FeFunction::zero(mesh), v = FeFunction::zero(mesh);
  for (auto& c : u.coeffs) c = unit(rng);
  for (auto& c : v.coeffs) c = unit(rng);

  const SparseMatrix du = assemble_drift(*mesh, u, 1.0);
  const SparseMatrix dv = assemble_drift(*mesh, v, 1.0);

  FeFunction combo = FeFunction::zero(mesh);
  for (size_t i = 0; i < combo.coeffs.size(); ++i) {
    combo.coeffs[i] = 2.0 * u.coeffs[i] - 0.5 * v.coeffs[i];
  }
  const SparseMatrix dc = assemble_drift(*mesh, combo, 1.0);
  const SparseMatrix expected = add(du, dv, 2.0, -0.5);
  CHECK(same_structure_and_values(dc, expected, 1e-12));

  const SparseMatrix dq = assemble_drift(*mesh, u, -3.0);
  const SparseMatrix scaled = add(du, du, -1.5, -1.5);
  CHECK(same_structure_and_values(dq, scaled, 1e-12));

  FeFunction other;
  other.mesh = std::make_shared<const Mesh>(build_uniform_mesh(4));
  other.coeffs.assign(other.mesh->node_count(), 0.0);
  CHECK_THROWS_AS(assemble_drift(*mesh, other, 1.0), std::invalid_argument);
}

TEST_CASE("load vector: constant source") {
  const Mesh mesh = build_uniform_mesh(4);
  const auto ones = [](double, double, double) { return 1.0; };
  const std::vector<double> b = assemble_load(mesh, ones, 0.0);
  double total = 0.0;
  for (double v : b) total += v;
  CHECK(std::fabs(total - 1.0) <= 1e-13);
  const int center = 2 * 5 + 2;
  CHECK(b[center] == doctest::Approx(mesh.h() * mesh.h()).epsilon(1e-13));
}

TEST_CASE("load vector agrees with the high-order oracle at O(h^3)") {
  const ProblemSpec prob = make_manufactured_problem();
  const Mesh mesh = build_uniform_mesh(4);
  const double t = 0.5;
  const std::vector<double> b = assemble_load(mesh, prob.f3, t);

  std::vector<double> expected(mesh.node_count(), 0.0);
  for (int tri = 0; tri < mesh.triangle_count(); ++tri) {
    const auto& nodes = mesh.triangles[tri];
    for (int k = 0; k < 3; ++k) {
      expected[nodes[k]] += oracles::integrate_triangle(
          mesh, tri, [&](double x, double y, double l0, double l1, double l2) {
            const double psi = k == 0 ? l0 : (k == 1 ? l1 : l2);
            return prob.f3(x, y, t) * psi;
          });
    }
  }
  const double h3 = std::pow(mesh.h(), 3);
  for (int i = 0; i < mesh.node_count(); ++i) {
    CHECK(std::fabs(b[i] - expected[i]) <= 0.5 * h3);
  }
}

TEST_CASE("apply_dirichlet is idempotent and keeps symmetry") {
  const Mesh mesh = build_uniform_mesh(3);
  const auto bnodes = boundary_nodes(mesh);
  const auto f = [](double x, double y, double) { return x - y * y; };
  const SparseMatrix s = assemble_stiffness(mesh);
  const std::vector<double> load = assemble_load(mesh, f, 0.0);

  auto [a1, b1] = apply_dirichlet(s, load, bnodes);
  auto [a2, b2] = apply_dirichlet(a1, b1, bnodes);
  CHECK(same_structure_and_values(a1, a2));
  CHECK(b1 == b2);

  for (int r = 0; r < a1.nrows; ++r) {
    for (int k = a1.row_offsets[r]; k < a1.row_offsets[r + 1]; ++k) {
      CHECK(a1.values[k] == a1.at(a1.col_indices[k], r));
    }
  }
  for (int i : bnodes) CHECK(b1[i] == 0.0);
}

TEST_CASE("dirichlet-reduced Poisson solve has exact boundary zeros") {
  const Mesh mesh = build_uniform_mesh(2);
  const auto ones = [](double, double, double) { return 1.0; };
  auto [a, b] = apply_dirichlet(assemble_stiffness(mesh),
                                assemble_load(mesh, ones, 0.0),
                                boundary_nodes(mesh));
  auto [x, report] = solve_spd(a, b, 1e-12);
  for (int i : boundary_nodes(mesh)) CHECK(x[i] == 0.0);
  CHECK(x[4] > 0.0);
}

TEST_CASE("evaluate and evaluate_gradient") {
  auto mesh = std::make_shared<const Mesh>(build_uniform_mesh(3));
  std::mt19937 rng(99);
  std::uniform_real_distribution<double> unit(-2.0, 2.0);
  FeFunction f = FeFunction::zero(mesh);
  for (auto& c : f.coeffs) c = unit(rng);

  for (int k = 0; k < mesh->node_count(); ++k) {
    CHECK(evaluate(f, mesh->nodes[k][0], mesh->nodes[k][1]) ==
          doctest::Approx(f.coeffs[k]).epsilon(1e-14));
  }

  FeFunction linear = FeFunction::interpolate(
      mesh, [](double x, double, double) { return x; }, 0.0);
  std::uniform_real_distribution<double> pos(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const double x = pos(rng), y = pos(rng);
    CHECK(evaluate(linear, x, y) == doctest::Approx(x).epsilon(1e-13));
    const auto grad = evaluate_gradient(linear, x, y);
    CHECK(grad[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::fabs(grad[1]) <= 1e-12);
  }

  // Mid-edge values interpolate the endpoints.
  const double mid = evaluate(f, 0.5 / 3.0, 0.0);
  CHECK(mid == doctest::Approx(0.5 * (f.coeffs[0] + f.coeffs[1])).epsilon(1e-14));
}

TEST_CASE("prolongation reproduces the coarse function exactly") {
  auto coarse_mesh = std::make_shared<const Mesh>(build_uniform_mesh(3));
  auto fine_mesh = std::make_shared<const Mesh>(build_uniform_mesh(9));

  FeFunction constant = FeFunction::zero(coarse_mesh);
  for (auto& c : constant.coeffs) c = 1.25;
  const FeFunction fine_const = prolongate(constant, fine_mesh);
  for (double c : fine_const.coeffs) {
    CHECK(c == doctest::Approx(1.25).epsilon(1e-15));
  }

  FeFunction linear = FeFunction::interpolate(
      coarse_mesh, [](double x, double, double) { return x; }, 0.0);
  const FeFunction fine_linear = prolongate(linear, fine_mesh);
  for (int k = 0; k < fine_mesh->node_count(); ++k) {
    CHECK(fine_linear.coeffs[k] ==
          doctest::Approx(fine_mesh->nodes[k][0]).epsilon(1e-14));
  }

  std::mt19937 rng(2024);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  FeFunction random_coarse = FeFunction::zero(coarse_mesh);
  for (auto& c : random_coarse.coeffs) c = unit(rng);
  const FeFunction fine = prolongate(random_coarse, fine_mesh);
  std::uniform_real_distribution<double> pos(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    const double x = pos(rng), y = pos(rng);
    CHECK(std::fabs(evaluate(fine, x, y) - evaluate(random_coarse, x, y)) <=
          1e-13);
  }

  auto mesh10 = std::make_shared<const Mesh>(build_uniform_mesh(10));
  CHECK_THROWS_AS(prolongate(random_coarse, mesh10), std::invalid_argument);
}

TEST_CASE("energy consistency against a per-triangle oracle") {
  auto mesh = std::make_shared<const Mesh>(build_uniform_mesh(5));
  std::mt19937 rng(55);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  FeFunction u = FeFunction::zero(mesh);
  for (auto& c : u.coeffs) c = unit(rng);

  const SparseMatrix s = assemble_stiffness(*mesh);
  const auto su = spmv(s, u.coeffs);
  double quad = 0.0;
  for (size_t i = 0; i < su.size(); ++i) quad += u.coeffs[i] * su[i];

  double energy = 0.0;
  for (int t = 0; t < mesh->triangle_count(); ++t) {
    const auto& tri = mesh->triangles[t];
    const auto& a = mesh->nodes[tri[0]];
    // The gradient is constant; evaluate it at the centroid.
    const auto& b = mesh->nodes[tri[1]];
    const auto& c = mesh->nodes[tri[2]];
    const double cx = (a[0] + b[0] + c[0]) / 3.0;
    const double cy = (a[1] + b[1] + c[1]) / 3.0;
    const auto grad = evaluate_gradient(u, cx, cy);
    energy += mesh->triangle_area(t) * (grad[0] * grad[0] + grad[1] * grad[1]);
  }
  CHECK(std::fabs(quad - energy) <= 1e-12 * std::max(1.0, std::fabs(energy)));
}

TEST_CASE("five-point stencil equivalence on m=8") {
  const int m = 8;
  const Mesh mesh = build_uniform_mesh(m);
  const auto ones = [](double, double, double) { return 1.0; };
  auto [a, b] = apply_dirichlet(assemble_stiffness(mesh),
                                assemble_load(mesh, ones, 0.0),
                                boundary_nodes(mesh));
  auto [x, report] = solve_spd(a, b, 1e-13);

  // Finite-difference oracle on the (m-1)^2 interior unknowns:
  // (4u - sum of axis neighbors)/h^2 = 1.
  const int k = m - 1;
  const double h = mesh.h();
  std::vector<std::vector<double>> fd(k * k, std::vector<double>(k * k, 0.0));
  std::vector<double> rhs(k * k, 1.0);
  for (int j = 0; j < k; ++j) {
    for (int i = 0; i < k; ++i) {
      const int row = j * k + i;
      fd[row][row] = 4.0 / (h * h);
      if (i > 0) fd[row][row - 1] = -1.0 / (h * h);
      if (i < k - 1) fd[row][row + 1] = -1.0 / (h * h);
      if (j > 0) fd[row][row - k] = -1.0 / (h * h);
      if (j < k - 1) fd[row][row + k] = -1.0 / (h * h);
    }
  }
  const auto u_fd = oracles::dense_solve(fd, rhs);
  for (int j = 0; j < k; ++j) {
    for (int i = 0; i < k; ++i) {
      const int node = (j + 1) * (m + 1) + (i + 1);
      CHECK(std::fabs(x[node] - u_fd[j * k + i]) <= 1e-10);
    }
  }
}

}  // TEST_SUITE("fem")
