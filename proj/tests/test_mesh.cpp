#include "sfwg/mesh.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

using namespace sfwg;

namespace {

std::vector<std::pair<double, double>> sorted_points(const Mesh& mesh) {
  std::vector<std::pair<double, double>> pts;
  for (const auto& p : mesh.vertices()) pts.emplace_back(p.x(), p.y());
  std::sort(pts.begin(), pts.end());
  return pts;
}

void check_same_point_set(const Mesh& a, const Mesh& b) {
  const auto pa = sorted_points(a);
  const auto pb = sorted_points(b);
  REQUIRE(pa.size() == pb.size());
  for (std::size_t i = 0; i < pa.size(); ++i) {
    CHECK(pa[i].first == doctest::Approx(pb[i].first).epsilon(1e-15));
    CHECK(pa[i].second == doctest::Approx(pb[i].second).epsilon(1e-15));
  }
}

}  // namespace

TEST_SUITE("mesh") {

TEST_CASE("unit square mesh counts") {
  const Mesh m1 = generate_unit_square_mesh(1);
  CHECK(m1.num_vertices() == 4);
  CHECK(m1.num_triangles() == 2);
  CHECK(m1.num_edges() == 5);
  CHECK(m1.num_boundary_edges() == 4);

  const Mesh m2 = generate_unit_square_mesh(2);
  CHECK(m2.num_vertices() == 9);
  CHECK(m2.num_triangles() == 8);
  CHECK(m2.num_edges() == 16);
  CHECK(m2.num_boundary_edges() == 8);

  CHECK(generate_unit_square_mesh(64).num_triangles() == 8192);
}

TEST_CASE("general counts and mesh size") {
  for (Index n : {1, 3, 5, 8, 16}) {
    const Mesh m = generate_unit_square_mesh(n);
    CHECK(m.num_vertices() == (n + 1) * (n + 1));
    CHECK(m.num_triangles() == 2 * n * n);
    CHECK(m.num_edges() == 3 * n * n + 2 * n);
    CHECK(mesh_size(m) == doctest::Approx(std::sqrt(2.0) / static_cast<double>(n)).epsilon(1e-14));
  }
}

TEST_CASE("zero subdivisions rejected") {
  CHECK_THROWS_AS(generate_unit_square_mesh(0), std::invalid_argument);
}

TEST_CASE("generated and refined meshes satisfy the invariants") {
  for (Index n : {1, 2, 3, 4, 8, 16, 32}) {
    const Mesh m = generate_unit_square_mesh(n);
    CHECK_NOTHROW(validate(m));
    CHECK_NOTHROW(validate(refine_uniform(m)));
  }
  CHECK_NOTHROW(validate(refine_uniform(refine_uniform(generate_unit_square_mesh(3)))));
}

TEST_CASE("interior edges have two triangles, boundary edges one") {
  const Mesh m = generate_unit_square_mesh(6);
  for (Index e = 0; e < m.num_edges(); ++e) {
    const auto& adj = m.edge_triangles(e);
    CHECK(adj[0] != invalid_index);
    const auto& v = m.edges()[e];
    const Point a = m.vertex(v[0]), b = m.vertex(v[1]);
    const bool on_boundary = (a.x() == 0 && b.x() == 0) || (a.x() == 1 && b.x() == 1) ||
                             (a.y() == 0 && b.y() == 0) || (a.y() == 1 && b.y() == 1);
    CHECK(m.is_boundary_edge(e) == on_boundary);
    CHECK((adj[1] == invalid_index) == on_boundary);
  }
}

TEST_CASE("edge_to_tris and tri_to_edges are mutually consistent") {
  const Mesh m = refine_uniform(generate_unit_square_mesh(3));
  for (Index t = 0; t < m.num_triangles(); ++t) {
    for (const auto& le : m.triangle_edges(t)) {
      const auto& adj = m.edge_triangles(le.edge);
      CHECK((adj[0] == t || adj[1] == t));
    }
  }
  for (Index e = 0; e < m.num_edges(); ++e) {
    for (Index t : m.edge_triangles(e)) {
      if (t == invalid_index) continue;
      const auto& te = m.triangle_edges(t);
      CHECK(std::count_if(te.begin(), te.end(), [e](const LocalEdge& le) { return le.edge == e; }) == 1);
    }
  }
}

TEST_CASE("refinement quadruples triangles and halves h") {
  const Mesh m1 = generate_unit_square_mesh(1);
  const Mesh r = refine_uniform(m1);
  CHECK(r.num_triangles() == 8);
  CHECK(mesh_size(r) == doctest::Approx(0.5 * mesh_size(m1)).epsilon(1e-15));
}

TEST_CASE("refined and generated meshes have the same vertex sets") {
  check_same_point_set(refine_uniform(generate_unit_square_mesh(1)), generate_unit_square_mesh(2));
  check_same_point_set(refine_uniform(refine_uniform(generate_unit_square_mesh(1))), generate_unit_square_mesh(4));
  check_same_point_set(refine_uniform(refine_uniform(generate_unit_square_mesh(3))), generate_unit_square_mesh(12));
}

TEST_CASE("reference triangle geometry") {
  const auto g = triangle_geometry({Point(0, 0), Point(1, 0), Point(0, 1)});
  CHECK(g.area == doctest::Approx(0.5));
  CHECK(g.diameter == doctest::Approx(std::sqrt(2.0)));
  // local edge 1 joins (1,0) and (0,1)
  CHECK(g.normals[1].x() == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(g.normals[1].y() == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(g.normals[0].y() == doctest::Approx(-1.0));
  CHECK(g.normals[2].x() == doctest::Approx(-1.0));

  const Mesh single({Point(0, 0), Point(1, 0), Point(0, 1)}, {{0, 1, 2}});
  CHECK(mesh_size(single) == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("normals are outward unit vectors and close up") {
  const Mesh m = refine_uniform(generate_unit_square_mesh(3));
  for (Index t = 0; t < m.num_triangles(); ++t) {
    const auto g = element_geometry(m, t);
    Point closure = Point::Zero();
    for (int k = 0; k < 3; ++k) {
      const Point mid = 0.5 * (g.vertices[k] + g.vertices[(k + 1) % 3]);
      CHECK(g.normals[k].dot(mid - g.centroid) > 0.0);
      CHECK(g.normals[k].norm() == doctest::Approx(1.0).epsilon(1e-15));
      closure += g.edge_lengths[k] * g.normals[k];
    }
    CHECK(closure.norm() < 1e-14);
  }
}

TEST_CASE("element diameters on n = 4") {
  const Mesh m = generate_unit_square_mesh(4);
  double h = 0.0;
  for (Index t = 0; t < m.num_triangles(); ++t) h = std::max(h, element_geometry(m, t).diameter);
  CHECK(h == doctest::Approx(std::sqrt(2.0) / 4.0).epsilon(1e-15));
  CHECK(mesh_size(generate_unit_square_mesh(2)) == doctest::Approx(std::sqrt(2.0) / 2.0).epsilon(1e-15));
}

TEST_CASE("minimum angle is 45 degrees at every level") {
  for (Index n : {1, 2, 4, 8, 16}) {
    CHECK(min_angle_degrees(generate_unit_square_mesh(n)) == doctest::Approx(45.0).epsilon(1e-12));
  }
}

TEST_CASE("clockwise input is reoriented, degenerate and non-manifold input rejected") {
  const Mesh m({Point(0, 0), Point(1, 0), Point(0, 1)}, {{0, 2, 1}});
  CHECK_NOTHROW(validate(m));
  CHECK(element_geometry(m, 0).area == doctest::Approx(0.5));

  CHECK_THROWS_AS(Mesh({Point(0, 0), Point(1, 0), Point(2, 0)}, {{0, 1, 2}}), MeshError);
  CHECK_THROWS_AS(Mesh({Point(0, 0), Point(1, 0)}, {{0, 1, 5}}), MeshError);
  CHECK_THROWS_AS(Mesh({Point(0, 0), Point(1, 0), Point(0, 1), Point(0, -1), Point(1, 1)},
                       {{0, 1, 2}, {0, 3, 1}, {0, 1, 4}}),
                  MeshError);
}

TEST_CASE("empty mesh has no size") {
  const Mesh empty({}, {});
  CHECK_THROWS_AS(mesh_size(empty), std::invalid_argument);
  CHECK_THROWS_AS(element_geometry(generate_unit_square_mesh(1), 2), std::out_of_range);
}

TEST_CASE("text format round-trips bit-exactly") {
  Mesh m = generate_unit_square_mesh(3);
  // move an interior vertex off the grid so the digits matter
  std::vector<Point> v = m.vertices();
  v[5] += Point(1.0 / 7.0, -1.0 / 13.0) * 0.01;
  m = Mesh(v, m.triangles());

  std::stringstream buffer;
  write_mesh(buffer, m);
  const Mesh back = read_mesh(buffer);
  REQUIRE(back.num_vertices() == m.num_vertices());
  for (Index i = 0; i < m.num_vertices(); ++i) {
    CHECK(back.vertex(i).x() == m.vertex(i).x());
    CHECK(back.vertex(i).y() == m.vertex(i).y());
  }
  CHECK(back.triangles() == m.triangles());
  CHECK(back.num_edges() == m.num_edges());
}

TEST_CASE("malformed mesh text is rejected") {
  std::stringstream bad_header("x y z");
  CHECK_THROWS_AS(read_mesh(bad_header), MeshError);
  std::stringstream truncated("3 3 1\n0 0\n1 0\n");
  CHECK_THROWS_AS(read_mesh(truncated), MeshError);
  std::stringstream wrong_edges("3 4 1\n0 0\n1 0\n0 1\n0 1 2\n");
  CHECK_THROWS_AS(read_mesh(wrong_edges), MeshError);
}

}  // TEST_SUITE
