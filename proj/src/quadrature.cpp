#include "sfwg/quadrature.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace sfwg {

namespace {

// Adds the three points of the orbit (a,a), (1-2a,a), (a,1-2a).
void add_orbit(TriangleRule& rule, double a, double weight) {
  const double b = 1.0 - 2.0 * a;
  rule.points.emplace_back(a, a);
  rule.points.emplace_back(b, a);
  rule.points.emplace_back(a, b);
  for (int i = 0; i < 3; ++i) rule.weights.push_back(weight);
}

// Legendre nodes on [-1,1] by Newton iteration from the Chebyshev guesses.
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
      }
      dp = n * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    // recompute the derivative at the converged node
    double p0 = 1.0, p1 = 0.0;
    for (int j = 0; j < n; ++j) {
      const double p2 = p1;
      p1 = p0;
      p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
    }
    dp = n * (z * p0 - p1) / (z * z - 1.0);
    nodes[i] = -z;
    nodes[n - 1 - i] = z;
    weights[i] = weights[n - 1 - i] = 2.0 / ((1.0 - z * z) * dp * dp);
  }
  if (n % 2 == 1) nodes[n / 2] = 0.0;
}

}  // namespace

TriangleRule triangle_rule(int degree) {
  TriangleRule rule;
  switch (degree) {
    case 1:
      rule.points.emplace_back(1.0 / 3.0, 1.0 / 3.0);
      rule.weights.push_back(0.5);
      rule.exact_degree = 1;
      break;
    case 2:
      add_orbit(rule, 1.0 / 6.0, 1.0 / 6.0);
      rule.exact_degree = 2;
      break;
    case 3:
    case 4:
      add_orbit(rule, 0.445948490915964886318329253883, 0.5 * 0.223381589678011465695007008433);
      add_orbit(rule, 0.0915762135097707434595714634022, 0.5 * 0.1099517436553218676383263249);
      rule.exact_degree = 4;
      break;
    case 5: {
      const double s15 = std::sqrt(15.0);
      rule.points.emplace_back(1.0 / 3.0, 1.0 / 3.0);
      rule.weights.push_back(0.5 * 9.0 / 40.0);
      add_orbit(rule, (6.0 - s15) / 21.0, 0.5 * (155.0 - s15) / 1200.0);
      add_orbit(rule, (6.0 + s15) / 21.0, 0.5 * (155.0 + s15) / 1200.0);
      rule.exact_degree = 5;
      break;
    }
    default:
      throw std::invalid_argument("triangle_rule: unsupported degree " + std::to_string(degree));
  }
  return rule;
}

TriangleRule composite_triangle_rule(const TriangleRule& rule, int levels) {
  if (levels < 0) {
    throw std::invalid_argument("composite_triangle_rule: negative refinement level");
  }
  std::vector<std::array<Point, 3>> cells{{Point(0.0, 0.0), Point(1.0, 0.0), Point(0.0, 1.0)}};
  for (int level = 0; level < levels; ++level) {
    std::vector<std::array<Point, 3>> children;
    children.reserve(4 * cells.size());
    for (const auto& [a, b, c] : cells) {
      const Point ab = 0.5 * (a + b), bc = 0.5 * (b + c), ca = 0.5 * (c + a);
      children.push_back({a, ab, ca});
      children.push_back({ab, b, bc});
      children.push_back({ca, bc, c});
      children.push_back({ab, bc, ca});
    }
    cells = std::move(children);
  }
  TriangleRule out;
  out.exact_degree = rule.exact_degree;
  for (const auto& cell : cells) {
    const auto mapped = map_to_physical(rule, cell);
    out.points.insert(out.points.end(), mapped.points.begin(), mapped.points.end());
    out.weights.insert(out.weights.end(), mapped.weights.begin(), mapped.weights.end());
  }
  return out;
}

const TriangleRule& data_triangle_rule() {
  static const TriangleRule rule = composite_triangle_rule(triangle_rule(5), 3);
  return rule;
}

SegmentRule edge_rule(int degree) {
  if (degree < 1 || degree > 9) {
    throw std::invalid_argument("edge_rule: unsupported degree " + std::to_string(degree));
  }
  const int n = (degree + 2) / 2;
  std::vector<double> nodes, weights;
  gauss_legendre(n, nodes, weights);
  SegmentRule rule;
  rule.exact_degree = 2 * n - 1;
  for (int i = 0; i < n; ++i) {
    rule.points.push_back(0.5 * (nodes[i] + 1.0));
    rule.weights.push_back(0.5 * weights[i]);
  }
  return rule;
}

PhysicalRule map_to_physical(const TriangleRule& rule, const std::array<Point, 3>& v) {
  const Point e1 = v[1] - v[0];
  const Point e2 = v[2] - v[0];
  const double det = e1.x() * e2.y() - e2.x() * e1.y();
  if (!(std::abs(det) > 0.0)) {
    throw MeshError("map_to_physical: degenerate triangle");
  }
  PhysicalRule out;
  out.points.reserve(rule.points.size());
  out.weights.reserve(rule.weights.size());
  for (std::size_t q = 0; q < rule.points.size(); ++q) {
    out.points.push_back(v[0] + rule.points[q].x() * e1 + rule.points[q].y() * e2);
    out.weights.push_back(rule.weights[q] * std::abs(det));
  }
  return out;
}

PhysicalRule map_to_physical(const TriangleRule& rule, const ElementGeometry& geom) {
  return map_to_physical(rule, geom.vertices);
}

PhysicalRule map_to_physical(const SegmentRule& rule, const Point& start, const Point& end) {
  const double length = (end - start).norm();
  if (!(length > 0.0)) {
    throw MeshError("map_to_physical: zero-length edge");
  }
  PhysicalRule out;
  for (std::size_t q = 0; q < rule.points.size(); ++q) {
    out.points.push_back(start + rule.points[q] * (end - start));
    out.weights.push_back(rule.weights[q] * length);
  }
  return out;
}

VectorP1Basis::VectorP1Basis(const Point& centroid, double scale) : centroid_(centroid), scale_(scale) {
  if (!(scale > 0.0)) {
    throw std::invalid_argument("VectorP1Basis: scale must be positive");
  }
}

VectorP1Basis::VectorP1Basis(const ElementGeometry& geom) : VectorP1Basis(geom.centroid, geom.diameter) {}

VectorP1Basis::Values VectorP1Basis::evaluate(const Point& p) const {
  const double xi = (p.x() - centroid_.x()) / scale_;
  const double eta = (p.y() - centroid_.y()) / scale_;
  Values v = Values::Zero();
  v(0, 0) = 1.0;
  v(0, 1) = xi;
  v(0, 2) = eta;
  v(1, 3) = 1.0;
  v(1, 4) = xi;
  v(1, 5) = eta;
  return v;
}

VectorP1Basis::Coefficients VectorP1Basis::divergence() const {
  Coefficients d = Coefficients::Zero();
  d(1) = 1.0 / scale_;
  d(5) = 1.0 / scale_;
  return d;
}

Point VectorP1Basis::evaluate(const Coefficients& c, const Point& p) const {
  return evaluate(p) * c;
}

Eigen::Vector2d EdgeP1Basis::evaluate(double s) {
  return {1.0, std::sqrt(3.0) * (2.0 * s - 1.0)};
}

double EdgeP1Basis::evaluate(const Eigen::Vector2d& c, double s) {
  return c.dot(evaluate(s));
}

Eigen::Vector2d edge_moments(const Point& start, const Point& end, const ScalarFunction& g) {
  static const SegmentRule rule = edge_rule(9);
  Eigen::Vector2d c = Eigen::Vector2d::Zero();
  for (std::size_t q = 0; q < rule.points.size(); ++q) {
    const double s = rule.points[q];
    c += rule.weights[q] * g(start + s * (end - start)) * EdgeP1Basis::evaluate(s);
  }
  return c;
}

}  // namespace sfwg
