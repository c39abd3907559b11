#include "pnp2g/mesh.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

namespace pnp2g {

double Mesh::triangle_area(int t) const {
  const auto& tri = triangles[t];
  const auto& a = nodes[tri[0]];
  const auto& b = nodes[tri[1]];
  const auto& c = nodes[tri[2]];
  return 0.5 * ((b[0] - a[0]) * (c[1] - a[1]) - (c[0] - a[0]) * (b[1] - a[1]));
}

Mesh build_uniform_mesh(int m) {
  if (m < 1) throw std::invalid_argument("build_uniform_mesh: m must be >= 1");

  Mesh mesh;
  mesh.m = m;
  const int n = m + 1;
  mesh.nodes.reserve(static_cast<size_t>(n) * n);
  mesh.boundary.reserve(static_cast<size_t>(n) * n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      mesh.nodes.push_back({static_cast<double>(i) / m,
                            static_cast<double>(j) / m});
      mesh.boundary.push_back(i == 0 || i == m || j == 0 || j == m);
    }
  }

  mesh.triangles.reserve(2 * static_cast<size_t>(m) * m);
  for (int j = 0; j < m; ++j) {
    for (int i = 0; i < m; ++i) {
      const int ll = j * n + i;
      const int lr = ll + 1;
      const int ul = ll + n;
      const int ur = ul + 1;
      mesh.triangles.push_back({ll, lr, ur});
      mesh.triangles.push_back({ll, ur, ul});
    }
  }
  return mesh;
}

std::vector<int> boundary_nodes(const Mesh& mesh) {
  std::vector<int> result;
  result.reserve(4 * static_cast<size_t>(mesh.m));
  for (int k = 0; k < mesh.node_count(); ++k) {
    if (mesh.boundary[k]) result.push_back(k);
  }
  return result;
}

namespace {

// Candidate cell coordinates along one axis: the cell floor(u*m) plus, for
// points exactly on an interior gridline, the cell below it (lower index
// first, for the lowest-triangle tie-break).
void axis_candidates(double u, int m, int out[2], int& count) {
  const double scaled = u * m;
  double integral = 0.0;
  const bool on_gridline = std::modf(scaled, &integral) == 0.0;
  int cell = static_cast<int>(integral);
  if (!on_gridline) cell = static_cast<int>(std::floor(scaled));
  count = 0;
  if (on_gridline && cell > 0) out[count++] = cell - 1;
  if (cell <= m - 1 && cell >= 0) out[count++] = cell;
}

}  // namespace

int locate_element(const Mesh& mesh, double x, double y) {
  if (!(x >= 0.0 && x <= 1.0 && y >= 0.0 && y <= 1.0)) {
    throw std::domain_error("locate_element: point outside the unit square");
  }
  const int m = mesh.m;
  int cx[2], cy[2];
  int ncx = 0, ncy = 0;
  axis_candidates(x, m, cx, ncx);
  axis_candidates(y, m, cy, ncy);

  // Cells in increasing index order; within a cell the lower triangle (even
  // index) is probed first.
  for (int jy = 0; jy < ncy; ++jy) {
    for (int jx = 0; jx < ncx; ++jx) {
      const int i = cx[jx];
      const int j = cy[jy];
      const double u = x * m - i;
      const double v = y * m - j;
      if (u < 0.0 || u > 1.0 || v < 0.0 || v > 1.0) continue;
      const int cell = j * m + i;
      if (v <= u) return 2 * cell;
      return 2 * cell + 1;
    }
  }
  throw std::domain_error("locate_element: no containing cell");
}

std::array<double, 3> barycentric_coords(const Mesh& mesh, int tri, double x,
                                         double y) {
  const auto& t = mesh.triangles[tri];
  const auto& a = mesh.nodes[t[0]];
  const auto& b = mesh.nodes[t[1]];
  const auto& c = mesh.nodes[t[2]];
  const double det =
      (b[0] - a[0]) * (c[1] - a[1]) - (c[0] - a[0]) * (b[1] - a[1]);
  const double l1 = ((x - a[0]) * (c[1] - a[1]) - (c[0] - a[0]) * (y - a[1])) / det;
  const double l2 = ((b[0] - a[0]) * (y - a[1]) - (x - a[0]) * (b[1] - a[1])) / det;
  return {1.0 - l1 - l2, l1, l2};
}

void write_mesh_dump(const Mesh& mesh, std::ostream& out) {
  out << "m " << mesh.m << "\n";
  const auto old_precision = out.precision(17);
  for (const auto& node : mesh.nodes) {
    out << "v " << node[0] << " " << node[1] << "\n";
  }
  for (const auto& tri : mesh.triangles) {
    out << "t " << tri[0] << " " << tri[1] << " " << tri[2] << "\n";
  }
  out.precision(old_precision);
}

}  // namespace pnp2g
