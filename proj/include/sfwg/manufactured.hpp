#pragma once

#include "sfwg/quadrature.hpp"

#include <string>
#include <vector>

namespace sfwg {

enum class Regularity { smooth, singular };

/// Exact solution of -Laplace(u) = f with Dirichlet data g = u.
struct ManufacturedCase {
  std::string name;
  ScalarFunction u;
  VectorFunction grad_u;
  ScalarFunction f;
  ScalarFunction g;
  Regularity regularity = Regularity::smooth;
};

/// u = sin(pi x) sin(pi y) on the unit square, f = 2 pi^2 u.
ManufacturedCase sine_case();

/// u = r^{2/3} sin(2 theta / 3), harmonic, gradient singular at the origin.
ManufacturedCase corner_singularity_case();

/// u = a + b x + c y, f = 0. Default u = 1 + 2x - y.
ManufacturedCase affine_case(double a = 1.0, double b = 2.0, double c = -1.0);

/// Lookup by CLI name: "example1", "example2", "affine-patch".
ManufacturedCase case_by_name(const std::string& name);
std::vector<std::string> case_names();

}  // namespace sfwg
