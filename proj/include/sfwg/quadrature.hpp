#pragma once

#include "sfwg/mesh.hpp"

#include <Eigen/Core>

#include <functional>
#include <vector>

namespace sfwg {

/// Rule on the reference triangle (0,0),(1,0),(0,1); weights sum to 1/2.
struct TriangleRule {
  std::vector<Point> points;
  std::vector<double> weights;
  int exact_degree = 0;
};

/// Rule on the unit segment [0,1]; weights sum to 1.
struct SegmentRule {
  std::vector<double> points;
  std::vector<double> weights;
  int exact_degree = 0;
};

/// Quadrature points and weights in physical coordinates.
struct PhysicalRule {
  std::vector<Point> points;
  std::vector<double> weights;
};

/// Symmetric rule exact to at least `degree` (1 <= degree <= 5): centroid,
/// 3-point, 6-point (degree 4) or 7-point (degree 5). All weights positive.
TriangleRule triangle_rule(int degree);

/// `rule` copied onto the 4^levels subtriangles of `levels` red refinements
/// of the reference triangle. Same exact_degree, smaller error on smooth
/// non-polynomial integrands.
TriangleRule composite_triangle_rule(const TriangleRule& rule, int levels);

/// Rule used wherever non-polynomial data is integrated over a triangle
/// (load vector, L2 projections, L2 errors): degree 5 on three refinement levels.
const TriangleRule& data_triangle_rule();

/// Gauss-Legendre rule on [0,1] with ceil((degree+1)/2) points, 1 <= degree <= 9.
SegmentRule edge_rule(int degree);

/// Affine push-forward onto a counterclockwise triangle; weights scale by |det J|.
PhysicalRule map_to_physical(const TriangleRule& rule, const std::array<Point, 3>& vertices);
PhysicalRule map_to_physical(const TriangleRule& rule, const ElementGeometry& geom);
/// Push-forward onto the segment from `start` to `end`; weights scale by its length.
PhysicalRule map_to_physical(const SegmentRule& rule, const Point& start, const Point& end);

using ScalarFunction = std::function<double(const Point&)>;
using VectorFunction = std::function<Point(const Point&)>;

/// [P1(T)]^2 in scaled centred monomials: with xi = (x - xc)/h_T and
/// eta = (y - yc)/h_T the functions are
/// (1,0), (xi,0), (eta,0), (0,1), (0,xi), (0,eta).
class VectorP1Basis {
public:
  static constexpr int size = 6;
  using Values = Eigen::Matrix<double, 2, size>;
  using Coefficients = Eigen::Matrix<double, size, 1>;

  VectorP1Basis(const Point& centroid, double scale);
  explicit VectorP1Basis(const ElementGeometry& geom);

  /// Column j is basis function j evaluated at p.
  [[nodiscard]] Values evaluate(const Point& p) const;
  /// Constant divergence of every basis function.
  [[nodiscard]] Coefficients divergence() const;
  /// Field sum_j c_j q_j at p.
  [[nodiscard]] Point evaluate(const Coefficients& c, const Point& p) const;

  [[nodiscard]] const Point& centroid() const { return centroid_; }
  [[nodiscard]] double scale() const { return scale_; }

private:
  Point centroid_;
  double scale_;
};

/// Orthonormal Legendre pair on an edge in the normalized arclength s in
/// [0,1]: phi_1 = 1, phi_2 = sqrt(3) (2 s - 1).
struct EdgeP1Basis {
  static constexpr int size = 2;
  static Eigen::Vector2d evaluate(double s);
  /// Trace value c_1 phi_1(s) + c_2 phi_2(s).
  static double evaluate(const Eigen::Vector2d& c, double s);
};

/// L2 projection of g onto P1 of the segment start->end, expressed in
/// EdgeP1Basis: c_m = int_0^1 g(x(s)) phi_m(s) ds, degree-9 Gauss rule.
Eigen::Vector2d edge_moments(const Point& start, const Point& end, const ScalarFunction& g);

}  // namespace sfwg
