#include "sfwg/projections.hpp"

#include <Eigen/Cholesky>

#include <cmath>

namespace sfwg {

FEFunction project_Qh(const Mesh& mesh, const ScalarFunction& phi) {
  const TriangleRule& rule = data_triangle_rule();
  const DofMap dofs(mesh);
  FEFunction v(dofs);
  for (Index t = 0; t < mesh.num_triangles(); ++t) {
    const auto geom = element_geometry(mesh, t);
    const auto quad = map_to_physical(rule, geom);
    double sum = 0.0;
    for (std::size_t q = 0; q < quad.points.size(); ++q) sum += quad.weights[q] * phi(quad.points[q]);
    v.set_interior(t, sum / geom.area);
  }
  for (Index e = 0; e < mesh.num_edges(); ++e) {
    const auto& ev = mesh.edges()[e];
    v.set_edge(e, edge_moments(mesh.vertex(ev[0]), mesh.vertex(ev[1]), phi));
  }
  return v;
}

VectorP1Field project_Qh_vector(const Mesh& mesh, const VectorFunction& w) {
  const TriangleRule& rule = data_triangle_rule();
  VectorP1Field field(mesh.num_triangles());
  for (Index t = 0; t < mesh.num_triangles(); ++t) {
    const auto geom = element_geometry(mesh, t);
    const VectorP1Basis basis(geom);
    const auto quad = map_to_physical(rule, geom);
    VectorP1Basis::Coefficients moments = VectorP1Basis::Coefficients::Zero();
    for (std::size_t q = 0; q < quad.points.size(); ++q) {
      moments += quad.weights[q] * basis.evaluate(quad.points[q]).transpose() * w(quad.points[q]);
    }
    const Eigen::LLT<LocalMass> llt(local_mass_matrix(geom));
    if (llt.info() != Eigen::Success) {
      throw MeshError("project_Qh_vector: singular element mass matrix");
    }
    field[t] = llt.solve(moments);
  }
  return field;
}

VectorP1Field weak_gradient_field(const Mesh& mesh, const FEFunction& v) {
  VectorP1Field field(mesh.num_triangles());
  for (Index t = 0; t < mesh.num_triangles(); ++t) {
    const auto g = local_weak_gradient(element_geometry(mesh, t), dof_layout(mesh, t));
    field[t] = g * gather_local(mesh, t, v.coefficients());
  }
  return field;
}

double energy_norm(const Mesh& mesh, const std::vector<LocalOperator>& ops, const Eigen::VectorXd& v) {
  double sum = 0.0;
  for (Index t = 0; t < mesh.num_triangles(); ++t) {
    const LocalDofs local = gather_local(mesh, t, v);
    sum += local.dot(ops[t].stiffness * local);
  }
  return std::sqrt(std::max(sum, 0.0));
}

double energy_norm(const Mesh& mesh, const FEFunction& v) {
  return energy_norm(mesh, local_operators(mesh), v.coefficients());
}

double h1_discrete_seminorm(const Mesh& mesh, const FEFunction& v) {
  double sum = 0.0;
  for (Index t = 0; t < mesh.num_triangles(); ++t) {
    const auto geom = element_geometry(mesh, t);
    const LocalDofs local = gather_local(mesh, t, v.coefficients());
    sum += local.dot(jump_gram_local(geom) * local) / geom.diameter;
  }
  return std::sqrt(std::max(sum, 0.0));
}

L2Errors l2_errors(const Mesh& mesh, const ManufacturedCase& problem, const FEFunction& uh) {
  const TriangleRule& rule = data_triangle_rule();
  double projection = 0.0;
  double exact = 0.0;
  for (Index t = 0; t < mesh.num_triangles(); ++t) {
    const auto geom = element_geometry(mesh, t);
    const auto quad = map_to_physical(rule, geom);
    const double u0 = uh.interior(t);
    double mean = 0.0;
    for (std::size_t q = 0; q < quad.points.size(); ++q) {
      const double u = problem.u(quad.points[q]);
      mean += quad.weights[q] * u;
      exact += quad.weights[q] * (u - u0) * (u - u0);
    }
    mean /= geom.area;
    projection += geom.area * (mean - u0) * (mean - u0);
  }
  return {std::sqrt(projection), std::sqrt(exact)};
}

double ell_functional(const Mesh& mesh, const ManufacturedCase& problem, const VectorP1Field& projected_gradient,
                      const Eigen::VectorXd& v) {
  static const SegmentRule rule = edge_rule(9);
  double sum = 0.0;
  for (Index t = 0; t < mesh.num_triangles(); ++t) {
    const auto geom = element_geometry(mesh, t);
    const auto layout = dof_layout(mesh, t);
    const VectorP1Basis basis(geom);
    const LocalDofs local = gather_local(mesh, t, v);
    for (int k = 0; k < 3; ++k) {
      const auto [start, end] = canonical_edge(geom, layout, k);
      const Eigen::Vector2d trace = local.segment<2>(LocalDofLayout::edge_dof(k, 0));
      for (std::size_t q = 0; q < rule.points.size(); ++q) {
        const double s = rule.points[q];
        const Point x = start + s * (end - start);
        const Point defect = problem.grad_u(x) - basis.evaluate(projected_gradient[t], x);
        const double jump = local(LocalDofLayout::interior()) - EdgeP1Basis::evaluate(trace, s);
        sum += rule.weights[q] * geom.edge_lengths[k] * defect.dot(geom.normals[k]) * jump;
      }
    }
  }
  return sum;
}

double ell_functional(const Mesh& mesh, const ManufacturedCase& problem, const FEFunction& v) {
  return ell_functional(mesh, problem, project_Qh_vector(mesh, problem.grad_u), v.coefficients());
}

}  // namespace sfwg
