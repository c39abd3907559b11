#pragma once

#include <array>
#include <iosfwd>
#include <vector>

namespace pnp2g {

/// Uniform triangulation of the unit square with m subdivisions per axis.
///
/// Nodes are numbered lexicographically with x running fastest, so node k
/// sits at ((k mod (m+1))/m, (k div (m+1))/m). Every grid cell is split by
/// the diagonal from its lower-left to its upper-right corner; cell
/// (i,j) contributes triangle 2*(j*m+i) = (ll,lr,ur) and 2*(j*m+i)+1 =
/// (ll,ur,ul), both counterclockwise. This orientation keeps the P1 space
/// of an m-mesh nested inside that of any (k*m)-mesh.
struct Mesh {
  int m = 0;
  std::vector<std::array<double, 2>> nodes;
  std::vector<std::array<int, 3>> triangles;
  std::vector<bool> boundary;

  int node_count() const { return static_cast<int>(nodes.size()); }
  int triangle_count() const { return static_cast<int>(triangles.size()); }
  double h() const { return 1.0 / m; }

  /// Signed area of triangle t (positive for this mesh's orientation).
  double triangle_area(int t) const;
};

/// Builds the uniform mesh; throws std::invalid_argument for m < 1.
Mesh build_uniform_mesh(int m);

/// Sorted indices of the 4m nodes on the boundary of the unit square.
std::vector<int> boundary_nodes(const Mesh& mesh);

/// Index of a triangle whose closed hull contains (x, y), resolved by cell
/// arithmetic in O(1). Points on shared edges or vertices resolve to the
/// lowest containing triangle index. Throws std::domain_error outside
/// [0,1]^2.
int locate_element(const Mesh& mesh, double x, double y);

/// Barycentric coordinates of (x, y) with respect to triangle tri.
std::array<double, 3> barycentric_coords(const Mesh& mesh, int tri, double x,
                                         double y);

/// Plain-text dump: "m <m>", one "v x y" line per node, one "t i j k" line
/// per triangle.
void write_mesh_dump(const Mesh& mesh, std::ostream& out);

}  // namespace pnp2g
