#include "pnp2g/fem.hpp"

#include <cmath>
#include <stdexcept>

namespace pnp2g {

FeFunction FeFunction::zero(std::shared_ptr<const Mesh> mesh) {
  FeFunction f;
  f.coeffs.assign(mesh->node_count(), 0.0);
  f.mesh = std::move(mesh);
  return f;
}

FeFunction FeFunction::interpolate(std::shared_ptr<const Mesh> mesh,
                                   const ScalarField& f, double t) {
  FeFunction g;
  g.coeffs.reserve(mesh->node_count());
  for (const auto& node : mesh->nodes) {
    g.coeffs.push_back(f(node[0], node[1], t));
  }
  g.mesh = std::move(mesh);
  return g;
}

const QuadratureRule& QuadratureRule::midpoint() {
  static const QuadratureRule rule{
      {{0.5, 0.5, 0.0}, {0.0, 0.5, 0.5}, {0.5, 0.0, 0.5}},
      {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0},
      2};
  return rule;
}

const QuadratureRule& QuadratureRule::degree4() {
  // Two symmetric orbits of three points each.
  constexpr double a1 = 0.108103018168070;
  constexpr double b1 = 0.445948490915965;
  constexpr double w1 = 0.223381589678011;
  constexpr double a2 = 0.816847572980459;
  constexpr double b2 = 0.091576213509771;
  constexpr double w2 = 0.109951743655322;
  static const QuadratureRule rule{
      {{a1, b1, b1}, {b1, a1, b1}, {b1, b1, a1},
       {a2, b2, b2}, {b2, a2, b2}, {b2, b2, a2}},
      {w1, w1, w1, w2, w2, w2},
      4};
  return rule;
}

namespace {

struct ElementGeometry {
  std::array<int, 3> nodes;
  std::array<std::array<double, 2>, 3> grad;  // constant P1 basis gradients
  double area;
};

ElementGeometry element_geometry(const Mesh& mesh, int t) {
  const auto& tri = mesh.triangles[t];
  const auto& a = mesh.nodes[tri[0]];
  const auto& b = mesh.nodes[tri[1]];
  const auto& c = mesh.nodes[tri[2]];
  const double det =
      (b[0] - a[0]) * (c[1] - a[1]) - (c[0] - a[0]) * (b[1] - a[1]);
  ElementGeometry g;
  g.nodes = tri;
  g.area = 0.5 * det;
  g.grad[0] = {(b[1] - c[1]) / det, (c[0] - b[0]) / det};
  g.grad[1] = {(c[1] - a[1]) / det, (a[0] - c[0]) / det};
  g.grad[2] = {(a[1] - b[1]) / det, (b[0] - a[0]) / det};
  return g;
}

std::array<double, 2> quad_point(const Mesh& mesh,
                                 const std::array<int, 3>& tri,
                                 const std::array<double, 3>& lambda) {
  const auto& a = mesh.nodes[tri[0]];
  const auto& b = mesh.nodes[tri[1]];
  const auto& c = mesh.nodes[tri[2]];
  return {lambda[0] * a[0] + lambda[1] * b[0] + lambda[2] * c[0],
          lambda[0] * a[1] + lambda[1] * b[1] + lambda[2] * c[1]};
}

}  // namespace

SparseMatrix assemble_stiffness(const Mesh& mesh) {
  std::vector<Triplet> triplets;
  triplets.reserve(9 * static_cast<size_t>(mesh.triangle_count()));
  for (int t = 0; t < mesh.triangle_count(); ++t) {
    const ElementGeometry g = element_geometry(mesh, t);
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        const double v = g.area * (g.grad[i][0] * g.grad[j][0] +
                                   g.grad[i][1] * g.grad[j][1]);
        triplets.push_back({g.nodes[i], g.nodes[j], v});
      }
    }
  }
  const int n = mesh.node_count();
  return SparseMatrix::from_triplets(n, n, std::move(triplets));
}

SparseMatrix assemble_mass(const Mesh& mesh) {
  std::vector<Triplet> triplets;
  triplets.reserve(9 * static_cast<size_t>(mesh.triangle_count()));
  for (int t = 0; t < mesh.triangle_count(); ++t) {
    const auto& tri = mesh.triangles[t];
    const double scale = mesh.triangle_area(t) / 12.0;
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        triplets.push_back({tri[i], tri[j], scale * (i == j ? 2.0 : 1.0)});
      }
    }
  }
  const int n = mesh.node_count();
  return SparseMatrix::from_triplets(n, n, std::move(triplets));
}

SparseMatrix assemble_drift(const Mesh& mesh, const FeFunction& phi,
                            double q) {
  if (!phi.mesh || phi.mesh->m != mesh.m) {
    throw std::invalid_argument("assemble_drift: phi lives on another mesh");
  }
  const QuadratureRule& rule = QuadratureRule::midpoint();
  std::vector<Triplet> triplets;
  triplets.reserve(9 * static_cast<size_t>(mesh.triangle_count()));
  for (int t = 0; t < mesh.triangle_count(); ++t) {
    const ElementGeometry g = element_geometry(mesh, t);
    double gphi_x = 0.0, gphi_y = 0.0;
    for (int i = 0; i < 3; ++i) {
      gphi_x += phi.coeffs[g.nodes[i]] * g.grad[i][0];
      gphi_y += phi.coeffs[g.nodes[i]] * g.grad[i][1];
    }
    // psi_k integrated against the constant grad(phi).grad(psi_j).
    std::array<double, 3> psi_mean{0.0, 0.0, 0.0};
    for (size_t qp = 0; qp < rule.points.size(); ++qp) {
      for (int k = 0; k < 3; ++k) {
        psi_mean[k] += rule.weights[qp] * rule.points[qp][k];
      }
    }
    for (int j = 0; j < 3; ++j) {
      const double conv = gphi_x * g.grad[j][0] + gphi_y * g.grad[j][1];
      for (int k = 0; k < 3; ++k) {
        triplets.push_back(
            {g.nodes[j], g.nodes[k], q * g.area * conv * psi_mean[k]});
      }
    }
  }
  const int n = mesh.node_count();
  return SparseMatrix::from_triplets(n, n, std::move(triplets));
}

std::vector<double> assemble_load(const Mesh& mesh, const ScalarField& f,
                                  double t) {
  const QuadratureRule& rule = QuadratureRule::midpoint();
  std::vector<double> b(mesh.node_count(), 0.0);
  for (int tri = 0; tri < mesh.triangle_count(); ++tri) {
    const auto& nodes = mesh.triangles[tri];
    const double area = mesh.triangle_area(tri);
    for (size_t qp = 0; qp < rule.points.size(); ++qp) {
      const auto& lambda = rule.points[qp];
      const auto xy = quad_point(mesh, nodes, lambda);
      const double fw = rule.weights[qp] * area * f(xy[0], xy[1], t);
      for (int k = 0; k < 3; ++k) {
        b[nodes[k]] += fw * lambda[k];
      }
    }
  }
  return b;
}

std::pair<SparseMatrix, std::vector<double>> apply_dirichlet(
    const SparseMatrix& a, std::span<const double> b,
    std::span<const int> bnodes) {
  if (a.nrows != a.ncols || static_cast<int>(b.size()) != a.nrows) {
    throw std::invalid_argument("apply_dirichlet: dimension mismatch");
  }
  std::vector<bool> is_boundary(a.nrows, false);
  for (int i : bnodes) is_boundary[i] = true;

  std::vector<Triplet> triplets;
  triplets.reserve(a.values.size());
  for (int row = 0; row < a.nrows; ++row) {
    if (is_boundary[row]) {
      triplets.push_back({row, row, 1.0});
      continue;
    }
    for (int k = a.row_offsets[row]; k < a.row_offsets[row + 1]; ++k) {
      const int col = a.col_indices[k];
      if (!is_boundary[col]) triplets.push_back({row, col, a.values[k]});
    }
  }
  std::vector<double> rhs(b.begin(), b.end());
  for (int i : bnodes) rhs[i] = 0.0;
  return {SparseMatrix::from_triplets(a.nrows, a.ncols, std::move(triplets)),
          std::move(rhs)};
}

double evaluate(const FeFunction& f, double x, double y) {
  const Mesh& mesh = *f.mesh;
  const int tri = locate_element(mesh, x, y);
  const auto lambda = barycentric_coords(mesh, tri, x, y);
  const auto& nodes = mesh.triangles[tri];
  return lambda[0] * f.coeffs[nodes[0]] + lambda[1] * f.coeffs[nodes[1]] +
         lambda[2] * f.coeffs[nodes[2]];
}

std::array<double, 2> evaluate_gradient(const FeFunction& f, double x,
                                        double y) {
  const Mesh& mesh = *f.mesh;
  const int tri = locate_element(mesh, x, y);
  const ElementGeometry g = element_geometry(mesh, tri);
  std::array<double, 2> grad{0.0, 0.0};
  for (int i = 0; i < 3; ++i) {
    grad[0] += f.coeffs[g.nodes[i]] * g.grad[i][0];
    grad[1] += f.coeffs[g.nodes[i]] * g.grad[i][1];
  }
  return grad;
}

FeFunction prolongate(const FeFunction& coarse,
                      std::shared_ptr<const Mesh> fine_mesh) {
  const Mesh& coarse_mesh = *coarse.mesh;
  if (fine_mesh->m % coarse_mesh.m != 0) {
    throw std::invalid_argument("prolongate: meshes are not nested");
  }
  FeFunction fine;
  fine.coeffs.reserve(fine_mesh->node_count());
  for (const auto& node : fine_mesh->nodes) {
    fine.coeffs.push_back(evaluate(coarse, node[0], node[1]));
  }
  fine.mesh = std::move(fine_mesh);
  return fine;
}

}  // namespace pnp2g
