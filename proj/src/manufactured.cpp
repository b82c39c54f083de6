#include "sfwg/manufactured.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace sfwg {

using std::numbers::pi;

ManufacturedCase sine_case() {
  ManufacturedCase c;
  c.name = "example1";
  c.u = [](const Point& p) { return std::sin(pi * p.x()) * std::sin(pi * p.y()); };
  c.grad_u = [](const Point& p) {
    return Point(pi * std::cos(pi * p.x()) * std::sin(pi * p.y()), pi * std::sin(pi * p.x()) * std::cos(pi * p.y()));
  };
  c.f = [](const Point& p) { return 2.0 * pi * pi * std::sin(pi * p.x()) * std::sin(pi * p.y()); };
  c.g = c.u;
  c.regularity = Regularity::smooth;
  return c;
}

ManufacturedCase corner_singularity_case() {
  ManufacturedCase c;
  c.name = "example2";
  // theta in [0, pi/2] on the closed unit square, so no branch cut is crossed.
  c.u = [](const Point& p) {
    const double r = p.norm();
    if (r == 0.0) return 0.0;
    return std::pow(r, 2.0 / 3.0) * std::sin(2.0 / 3.0 * std::atan2(p.y(), p.x()));
  };
  c.grad_u = [](const Point& p) {
    const double r = p.norm();
    const double theta = std::atan2(p.y(), p.x());
    const double scale = 2.0 / 3.0 * std::pow(r, -1.0 / 3.0);
    return Point(-scale * std::sin(theta / 3.0), scale * std::cos(theta / 3.0));
  };
  c.f = [](const Point&) { return 0.0; };
  c.g = c.u;
  c.regularity = Regularity::singular;
  return c;
}

ManufacturedCase affine_case(double a, double b, double c0) {
  ManufacturedCase c;
  c.name = "affine-patch";
  c.u = [=](const Point& p) { return a + b * p.x() + c0 * p.y(); };
  c.grad_u = [=](const Point&) { return Point(b, c0); };
  c.f = [](const Point&) { return 0.0; };
  c.g = c.u;
  c.regularity = Regularity::smooth;
  return c;
}

ManufacturedCase case_by_name(const std::string& name) {
  if (name == "example1") return sine_case();
  if (name == "example2") return corner_singularity_case();
  if (name == "affine-patch") return affine_case();
  throw std::invalid_argument("unknown case '" + name + "' (expected example1, example2 or affine-patch)");
}

std::vector<std::string> case_names() { return {"example1", "example2", "affine-patch"}; }

}  // namespace sfwg
