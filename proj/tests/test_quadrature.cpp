#include "sfwg/quadrature.hpp"
#include "sfwg/weak_gradient.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace sfwg;

namespace {

double factorial(int k) { return std::tgamma(k + 1.0); }

// int over the reference triangle of x^a y^b = a! b! / (a + b + 2)!
double reference_monomial(int a, int b) { return factorial(a) * factorial(b) / factorial(a + b + 2); }

double apply(const TriangleRule& rule, const std::function<double(double, double)>& f) {
  double s = 0.0;
  for (std::size_t q = 0; q < rule.points.size(); ++q) s += rule.weights[q] * f(rule.points[q].x(), rule.points[q].y());
  return s;
}

}  // namespace

TEST_SUITE("quadrature") {

TEST_CASE("triangle rule weights sum to the reference area") {
  for (int d = 1; d <= 5; ++d) {
    const auto rule = triangle_rule(d);
    double sum = 0.0;
    for (double w : rule.weights) {
      CHECK(w > 0.0);
      sum += w;
    }
    CHECK(sum == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(rule.exact_degree >= d);
  }
}

TEST_CASE("triangle rule point counts") {
  CHECK(triangle_rule(1).points.size() == 1);
  CHECK(triangle_rule(2).points.size() == 3);
  CHECK(triangle_rule(5).points.size() == 7);
}

TEST_CASE("analytic triangle integrals") {
  CHECK(apply(triangle_rule(2), [](double x, double) { return x; }) == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
  CHECK(apply(triangle_rule(5), [](double x, double y) { return x * x * y * y; }) ==
        doctest::Approx(1.0 / 180.0).epsilon(1e-14));
}

TEST_CASE("triangle rules integrate random polynomials of their degree") {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> normal;
  for (int d = 1; d <= 5; ++d) {
    const auto rule = triangle_rule(d);
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<std::array<double, 3>> terms;  // coefficient, a, b
      double exact = 0.0;
      for (int a = 0; a <= d; ++a) {
        for (int b = 0; a + b <= d; ++b) {
          const double c = normal(rng);
          terms.push_back({c, double(a), double(b)});
          exact += c * reference_monomial(a, b);
        }
      }
      const double approx = apply(rule, [&](double x, double y) {
        double s = 0;
        for (const auto& t : terms) s += t[0] * std::pow(x, t[1]) * std::pow(y, t[2]);
        return s;
      });
      double scale = 0;
      for (const auto& t : terms) scale += std::abs(t[0]) * reference_monomial(int(t[1]), int(t[2]));
      CHECK(std::abs(approx - exact) <= 1e-13 * scale);
    }
  }
}

TEST_CASE("unsupported degrees are rejected") {
  CHECK_THROWS_AS(triangle_rule(0), std::invalid_argument);
  CHECK_THROWS_AS(triangle_rule(6), std::invalid_argument);
  CHECK_THROWS_AS(edge_rule(0), std::invalid_argument);
  CHECK_THROWS_AS(edge_rule(10), std::invalid_argument);
  CHECK_THROWS_AS(composite_triangle_rule(triangle_rule(2), -1), std::invalid_argument);
}

TEST_CASE("edge rules") {
  for (int d = 1; d <= 9; ++d) {
    const auto rule = edge_rule(d);
    CHECK(rule.points.size() == static_cast<std::size_t>((d + 2) / 2));
    double sum = 0.0, first = 0.0;
    for (std::size_t q = 0; q < rule.points.size(); ++q) {
      sum += rule.weights[q];
      first += rule.weights[q] * rule.points[q];
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(first == doctest::Approx(0.5).epsilon(1e-15));
    for (int k = 0; k <= d; ++k) {
      double s = 0.0;
      for (std::size_t q = 0; q < rule.points.size(); ++q) s += rule.weights[q] * std::pow(rule.points[q], k);
      CHECK(s == doctest::Approx(1.0 / (k + 1)).epsilon(1e-14));
    }
  }
  const auto two = edge_rule(3);
  REQUIRE(two.points.size() == 2);
  double cubic = 0.0;
  for (int q = 0; q < 2; ++q) cubic += two.weights[q] * std::pow(two.points[q], 3);
  CHECK(cubic == doctest::Approx(0.25).epsilon(1e-15));
}

TEST_CASE("push-forward to physical cells") {
  const auto ref = map_to_physical(triangle_rule(5), std::array<Point, 3>{Point(0, 0), Point(1, 0), Point(0, 1)});
  const auto rule = triangle_rule(5);
  for (std::size_t q = 0; q < rule.points.size(); ++q) {
    CHECK((ref.points[q] - rule.points[q]).norm() < 1e-16);
    CHECK(ref.weights[q] == doctest::Approx(rule.weights[q]));
  }

  const auto big = map_to_physical(triangle_rule(3), std::array<Point, 3>{Point(0, 0), Point(2, 0), Point(0, 2)});
  double sum = 0.0;
  for (double w : big.weights) sum += w;
  CHECK(sum == doctest::Approx(2.0));

  const auto seg = map_to_physical(edge_rule(4), Point(0, 0), Point(0, 3));
  sum = 0.0;
  for (double w : seg.weights) sum += w;
  CHECK(sum == doctest::Approx(3.0));
  for (const auto& p : seg.points) CHECK(p.x() == 0.0);
}

TEST_CASE("composite rule keeps the degree and improves smooth integrands") {
  const auto plain = triangle_rule(5);
  const auto& fine = data_triangle_rule();
  CHECK(fine.points.size() == 64 * plain.points.size());
  CHECK(fine.exact_degree == 5);
  CHECK(apply(fine, [](double x, double y) { return x * x * y * y * y; }) ==
        doctest::Approx(reference_monomial(2, 3)).epsilon(1e-13));

  // a small triangle where the plain 7-point rule is visibly inexact
  const std::array<Point, 3> cell{Point(0, 0), Point(0.25, 0), Point(0.25, 0.25)};
  auto f = [](const Point& p) { return std::sin(std::numbers::pi * p.x()) * std::sin(std::numbers::pi * p.y()); };
  const double exact = oracle::integrate_triangle(f, cell[0], cell[1], cell[2], 16);
  auto integrate = [&](const TriangleRule& r) {
    const auto phys = map_to_physical(r, cell);
    double s = 0;
    for (std::size_t q = 0; q < phys.points.size(); ++q) s += phys.weights[q] * f(phys.points[q]);
    return s;
  };
  const double err_plain = std::abs(integrate(plain) - exact);
  const double err_fine = std::abs(integrate(fine) - exact);
  CHECK(err_fine < 1e-3 * err_plain);
  CHECK(err_fine < 1e-13);
}

TEST_CASE("vector P1 basis") {
  const VectorP1Basis basis(Point(0.3, -0.2), 0.5);
  const Point p(0.8, 0.1);
  const double xi = (0.8 - 0.3) / 0.5, eta = (0.1 + 0.2) / 0.5;
  const auto v = basis.evaluate(p);
  CHECK(v(0, 0) == doctest::Approx(1.0));
  CHECK(v(0, 1) == doctest::Approx(xi));
  CHECK(v(0, 2) == doctest::Approx(eta));
  CHECK(v(1, 3) == doctest::Approx(1.0));
  CHECK(v(1, 4) == doctest::Approx(xi));
  CHECK(v(1, 5) == doctest::Approx(eta));
  CHECK(v.row(1).head<3>().norm() == 0.0);
  CHECK(v.row(0).tail<3>().norm() == 0.0);

  const auto div = basis.divergence();
  CHECK(div(1) == doctest::Approx(2.0));
  CHECK(div(5) == doctest::Approx(2.0));
  CHECK(div(0) == 0.0);
  CHECK(div(2) == 0.0);
  CHECK(div(3) == 0.0);
  CHECK(div(4) == 0.0);

  VectorP1Basis::Coefficients c;
  c << 1, 2, 3, 4, 5, 6;
  const Point field = basis.evaluate(c, p);
  CHECK(field.x() == doctest::Approx(1 + 2 * xi + 3 * eta));
  CHECK(field.y() == doctest::Approx(4 + 5 * xi + 6 * eta));
}

TEST_CASE("edge Legendre basis is orthonormal on [0,1]") {
  const auto [x, w] = oracle::gauss01(4);
  Eigen::Matrix2d gram = Eigen::Matrix2d::Zero();
  for (std::size_t q = 0; q < x.size(); ++q) {
    const Eigen::Vector2d phi = EdgeP1Basis::evaluate(x[q]);
    gram += w[q] * phi * phi.transpose();
  }
  CHECK((gram - Eigen::Matrix2d::Identity()).norm() < 1e-14);
  CHECK(EdgeP1Basis::evaluate(Eigen::Vector2d(2, 3), 0.25) == doctest::Approx(oracle::legendre_trace(2, 3, 0.25)));
}

TEST_CASE("edge moments of g = x on the bottom edge") {
  const auto m = edge_moments(Point(0, 0), Point(1, 0), [](const Point& p) { return p.x(); });
  CHECK(m(0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(m(1) == doctest::Approx(1.0 / (2.0 * std::sqrt(3.0))).epsilon(1e-15));
}

TEST_CASE("mass matrix conditioning is bounded over the mesh family") {
  for (Index n : {2, 4, 8, 16}) {
    const Mesh mesh = generate_unit_square_mesh(n);
    double worst = 0.0;
    for (Index t = 0; t < mesh.num_triangles(); ++t) {
      const Eigen::SelfAdjointEigenSolver<LocalMass> eig(local_mass_matrix(element_geometry(mesh, t)));
      worst = std::max(worst, eig.eigenvalues().maxCoeff() / eig.eigenvalues().minCoeff());
    }
    CHECK(worst < 100.0);
  }
}

}  // TEST_SUITE
