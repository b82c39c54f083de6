#pragma once

#include <Eigen/Core>

#include <array>
#include <cstddef>
#include <iosfwd>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace sfwg {

using Index = std::size_t;
using Point = Eigen::Vector2d;

inline constexpr Index invalid_index = std::numeric_limits<Index>::max();

/// Thrown for degenerate or topologically inconsistent triangulations.
class MeshError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Edge of a triangle as seen from that triangle. `sign` is +1 when the
/// triangle walks the edge from its low to its high vertex, -1 otherwise.
struct LocalEdge {
  Index edge = invalid_index;
  int sign = 1;
};

/// Conforming triangulation of a planar polygon.
///
/// Triangles are stored counterclockwise. Local edge k of triangle
/// (v0, v1, v2) joins v_k and v_{(k+1) mod 3}. Edges are stored with their
/// vertex pair sorted (low index first); that ordering is the canonical
/// orientation shared by both neighbouring triangles.
///
/// A Mesh is immutable once constructed.
class Mesh {
public:
  /// Builds all connectivity. Clockwise triangles are reoriented; zero-area
  /// triangles and non-manifold edges raise MeshError.
  Mesh(std::vector<Point> vertices, std::vector<std::array<Index, 3>> triangles);

  [[nodiscard]] const std::vector<Point>& vertices() const { return vertices_; }
  [[nodiscard]] const std::vector<std::array<Index, 3>>& triangles() const { return triangles_; }
  [[nodiscard]] const std::vector<std::array<Index, 2>>& edges() const { return edges_; }

  [[nodiscard]] const std::array<LocalEdge, 3>& triangle_edges(Index t) const { return tri_to_edges_[t]; }
  /// One or two triangles; the second slot is invalid_index on the boundary.
  [[nodiscard]] const std::array<Index, 2>& edge_triangles(Index e) const { return edge_to_tris_[e]; }
  [[nodiscard]] bool is_boundary_edge(Index e) const { return boundary_edge_[e]; }

  [[nodiscard]] Index num_vertices() const { return vertices_.size(); }
  [[nodiscard]] Index num_triangles() const { return triangles_.size(); }
  [[nodiscard]] Index num_edges() const { return edges_.size(); }
  [[nodiscard]] Index num_boundary_edges() const;

  [[nodiscard]] Point vertex(Index v) const { return vertices_[v]; }

private:
  void build_connectivity();

  std::vector<Point> vertices_;
  std::vector<std::array<Index, 3>> triangles_;
  std::vector<std::array<Index, 2>> edges_;
  std::vector<std::array<LocalEdge, 3>> tri_to_edges_;
  std::vector<std::array<Index, 2>> edge_to_tris_;
  std::vector<bool> boundary_edge_;
};

/// Geometric data of one triangle. Local edge k runs from vertex k to
/// vertex (k+1) mod 3; normals are outward unit normals.
struct ElementGeometry {
  std::array<Point, 3> vertices;
  double area = 0.0;
  double diameter = 0.0;
  Point centroid = Point::Zero();
  std::array<Point, 3> normals;
  std::array<double, 3> edge_lengths{};
};

/// Geometry of an arbitrary counterclockwise triangle.
ElementGeometry triangle_geometry(const std::array<Point, 3>& vertices);
ElementGeometry element_geometry(const Mesh& mesh, Index t);

/// Unit square split into n x n cells, each cut along its positive-slope
/// diagonal: (n+1)^2 vertices and 2 n^2 triangles.
Mesh generate_unit_square_mesh(Index n);

/// Red refinement: every triangle is split into four congruent children
/// through its edge midpoints.
Mesh refine_uniform(const Mesh& mesh);

/// Largest element diameter.
double mesh_size(const Mesh& mesh);

/// Smallest interior angle over all triangles, in degrees.
double min_angle_degrees(const Mesh& mesh);

/// Checks every structural invariant (Euler relation, positive areas,
/// edge multiplicities, connectivity consistency). Throws MeshError.
void validate(const Mesh& mesh);

// Plain-text format: "V E F", V lines "x y", F lines "a b c" (0-based).
void write_mesh(std::ostream& out, const Mesh& mesh);
Mesh read_mesh(std::istream& in);
void write_mesh_file(const std::string& path, const Mesh& mesh);
Mesh read_mesh_file(const std::string& path);

}  // namespace sfwg
