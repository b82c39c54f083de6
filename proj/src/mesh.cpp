#include "sfwg/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <map>
#include <numbers>
#include <ostream>
#include <sstream>
#include <utility>

namespace sfwg {

namespace {

double signed_area(const Point& a, const Point& b, const Point& c) {
  return 0.5 * ((b.x() - a.x()) * (c.y() - a.y()) - (c.x() - a.x()) * (b.y() - a.y()));
}

}  // namespace

Mesh::Mesh(std::vector<Point> vertices, std::vector<std::array<Index, 3>> triangles)
    : vertices_(std::move(vertices)), triangles_(std::move(triangles)) {
  for (auto& tri : triangles_) {
    for (Index v : tri) {
      if (v >= vertices_.size()) {
        throw MeshError("triangle references vertex " + std::to_string(v) + " out of range");
      }
    }
    const double area = signed_area(vertices_[tri[0]], vertices_[tri[1]], vertices_[tri[2]]);
    if (!(std::abs(area) > 0.0)) {
      throw MeshError("degenerate triangle (zero area)");
    }
    if (area < 0.0) std::swap(tri[1], tri[2]);
  }
  build_connectivity();
}

void Mesh::build_connectivity() {
  std::map<std::pair<Index, Index>, Index> edge_ids;
  tri_to_edges_.resize(triangles_.size());

  for (Index t = 0; t < triangles_.size(); ++t) {
    const auto& tri = triangles_[t];
    for (int k = 0; k < 3; ++k) {
      const Index a = tri[k];
      const Index b = tri[(k + 1) % 3];
      const auto key = std::minmax(a, b);
      auto [it, inserted] = edge_ids.try_emplace({key.first, key.second}, edges_.size());
      if (inserted) {
        edges_.push_back({key.first, key.second});
        edge_to_tris_.push_back({t, invalid_index});
      } else {
        auto& adj = edge_to_tris_[it->second];
        if (adj[1] != invalid_index) {
          throw MeshError("edge shared by more than two triangles");
        }
        adj[1] = t;
      }
      tri_to_edges_[t][k] = LocalEdge{it->second, a < b ? 1 : -1};
    }
  }

  boundary_edge_.resize(edges_.size());
  for (Index e = 0; e < edges_.size(); ++e) {
    boundary_edge_[e] = edge_to_tris_[e][1] == invalid_index;
  }
}

Index Mesh::num_boundary_edges() const {
  return static_cast<Index>(std::count(boundary_edge_.begin(), boundary_edge_.end(), true));
}

ElementGeometry triangle_geometry(const std::array<Point, 3>& vertices) {
  ElementGeometry g;
  g.vertices = vertices;
  g.area = signed_area(vertices[0], vertices[1], vertices[2]);
  if (!(g.area > 0.0)) {
    throw MeshError("degenerate or clockwise triangle");
  }
  g.centroid = (vertices[0] + vertices[1] + vertices[2]) / 3.0;
  for (int k = 0; k < 3; ++k) {
    const Point tangent = vertices[(k + 1) % 3] - vertices[k];
    const double len = tangent.norm();
    g.edge_lengths[k] = len;
    // rotate the tangent clockwise: outward for a counterclockwise triangle
    g.normals[k] = Point(tangent.y(), -tangent.x()) / len;
    g.diameter = std::max(g.diameter, len);
  }
  return g;
}

ElementGeometry element_geometry(const Mesh& mesh, Index t) {
  if (t >= mesh.num_triangles()) {
    throw std::out_of_range("triangle index out of range");
  }
  const auto& tri = mesh.triangles()[t];
  return triangle_geometry({mesh.vertex(tri[0]), mesh.vertex(tri[1]), mesh.vertex(tri[2])});
}

Mesh generate_unit_square_mesh(Index n) {
  if (n == 0) {
    throw std::invalid_argument("unit square mesh needs at least one subdivision");
  }
  const Index stride = n + 1;
  std::vector<Point> vertices;
  vertices.reserve(stride * stride);
  for (Index j = 0; j <= n; ++j) {
    for (Index i = 0; i <= n; ++i) {
      vertices.emplace_back(static_cast<double>(i) / static_cast<double>(n),
                            static_cast<double>(j) / static_cast<double>(n));
    }
  }

  std::vector<std::array<Index, 3>> triangles;
  triangles.reserve(2 * n * n);
  for (Index j = 0; j < n; ++j) {
    for (Index i = 0; i < n; ++i) {
      const Index p00 = j * stride + i;
      const Index p10 = p00 + 1;
      const Index p01 = p00 + stride;
      const Index p11 = p01 + 1;
      triangles.push_back({p00, p10, p11});
      triangles.push_back({p00, p11, p01});
    }
  }
  return Mesh(std::move(vertices), std::move(triangles));
}

Mesh refine_uniform(const Mesh& mesh) {
  std::vector<Point> vertices = mesh.vertices();
  const Index offset = vertices.size();
  vertices.reserve(offset + mesh.num_edges());
  for (const auto& edge : mesh.edges()) {
    vertices.push_back(0.5 * (mesh.vertex(edge[0]) + mesh.vertex(edge[1])));
  }

  std::vector<std::array<Index, 3>> triangles;
  triangles.reserve(4 * mesh.num_triangles());
  for (Index t = 0; t < mesh.num_triangles(); ++t) {
    const auto& tri = mesh.triangles()[t];
    const auto& te = mesh.triangle_edges(t);
    const Index m0 = offset + te[0].edge;  // between v0 and v1
    const Index m1 = offset + te[1].edge;  // between v1 and v2
    const Index m2 = offset + te[2].edge;  // between v2 and v0
    triangles.push_back({tri[0], m0, m2});
    triangles.push_back({m0, tri[1], m1});
    triangles.push_back({m2, m1, tri[2]});
    triangles.push_back({m0, m1, m2});
  }
  return Mesh(std::move(vertices), std::move(triangles));
}

double mesh_size(const Mesh& mesh) {
  if (mesh.num_triangles() == 0) {
    throw std::invalid_argument("mesh_size of an empty mesh");
  }
  double h = 0.0;
  for (Index t = 0; t < mesh.num_triangles(); ++t) {
    h = std::max(h, element_geometry(mesh, t).diameter);
  }
  return h;
}

double min_angle_degrees(const Mesh& mesh) {
  double min_angle = 180.0;
  for (Index t = 0; t < mesh.num_triangles(); ++t) {
    const auto g = element_geometry(mesh, t);
    for (int k = 0; k < 3; ++k) {
      const Point u = g.vertices[(k + 1) % 3] - g.vertices[k];
      const Point w = g.vertices[(k + 2) % 3] - g.vertices[k];
      const double cosine = u.dot(w) / (u.norm() * w.norm());
      min_angle = std::min(min_angle, std::acos(std::clamp(cosine, -1.0, 1.0)) * 180.0 / std::numbers::pi);
    }
  }
  return min_angle;
}

void validate(const Mesh& mesh) {
  const auto V = static_cast<long long>(mesh.num_vertices());
  const auto E = static_cast<long long>(mesh.num_edges());
  const auto F = static_cast<long long>(mesh.num_triangles());
  if (V - E + F != 1) {
    throw MeshError("Euler relation V - E + F = 1 violated");
  }

  for (Index t = 0; t < mesh.num_triangles(); ++t) {
    const auto& tri = mesh.triangles()[t];
    if (!(signed_area(mesh.vertex(tri[0]), mesh.vertex(tri[1]), mesh.vertex(tri[2])) > 0.0)) {
      throw MeshError("triangle " + std::to_string(t) + " has non-positive signed area");
    }
    const auto& te = mesh.triangle_edges(t);
    for (int k = 0; k < 3; ++k) {
      const Index e = te[k].edge;
      if (e >= mesh.num_edges()) throw MeshError("edge index out of range");
      for (int l = k + 1; l < 3; ++l) {
        if (te[l].edge == e) throw MeshError("edge repeated within a triangle");
      }
      const auto& ev = mesh.edges()[e];
      const Index a = tri[k];
      const Index b = tri[(k + 1) % 3];
      if (std::min(a, b) != ev[0] || std::max(a, b) != ev[1]) {
        throw MeshError("local edge does not match its vertex pair");
      }
      if (te[k].sign != (a < b ? 1 : -1)) throw MeshError("wrong local edge orientation");
      const auto& adj = mesh.edge_triangles(e);
      if (adj[0] != t && adj[1] != t) {
        throw MeshError("tri_to_edges and edge_to_tris disagree");
      }
    }
  }

  for (Index e = 0; e < mesh.num_edges(); ++e) {
    const auto& ev = mesh.edges()[e];
    if (!(ev[0] < ev[1])) throw MeshError("edge not in canonical order");
    const auto& adj = mesh.edge_triangles(e);
    if (adj[0] == invalid_index) throw MeshError("edge with no triangle");
    const bool boundary = adj[1] == invalid_index;
    if (boundary != mesh.is_boundary_edge(e)) throw MeshError("boundary flag mismatch");
    for (Index t : adj) {
      if (t == invalid_index) continue;
      const auto& te = mesh.triangle_edges(t);
      if (std::none_of(te.begin(), te.end(), [e](const LocalEdge& le) { return le.edge == e; })) {
        throw MeshError("edge_to_tris and tri_to_edges disagree");
      }
    }
  }
}

void write_mesh(std::ostream& out, const Mesh& mesh) {
  out << mesh.num_vertices() << ' ' << mesh.num_edges() << ' ' << mesh.num_triangles() << '\n';
  out << std::setprecision(17);
  for (const auto& p : mesh.vertices()) {
    out << p.x() << ' ' << p.y() << '\n';
  }
  for (const auto& tri : mesh.triangles()) {
    out << tri[0] << ' ' << tri[1] << ' ' << tri[2] << '\n';
  }
}

Mesh read_mesh(std::istream& in) {
  Index nv = 0, ne = 0, nt = 0;
  if (!(in >> nv >> ne >> nt)) {
    throw MeshError("mesh file: bad header");
  }
  std::vector<Point> vertices(nv);
  for (auto& p : vertices) {
    if (!(in >> p.x() >> p.y())) throw MeshError("mesh file: truncated vertex list");
  }
  std::vector<std::array<Index, 3>> triangles(nt);
  for (auto& tri : triangles) {
    if (!(in >> tri[0] >> tri[1] >> tri[2])) throw MeshError("mesh file: truncated triangle list");
  }
  Mesh mesh(std::move(vertices), std::move(triangles));
  if (mesh.num_edges() != ne) {
    throw MeshError("mesh file: edge count in header does not match the triangles");
  }
  return mesh;
}

void write_mesh_file(const std::string& path, const Mesh& mesh) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  write_mesh(out, mesh);
  if (!out) throw std::runtime_error("failed writing " + path);
}

Mesh read_mesh_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_mesh(in);
}

}  // namespace sfwg
