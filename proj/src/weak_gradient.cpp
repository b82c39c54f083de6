#include "sfwg/weak_gradient.hpp"

#include <Eigen/Cholesky>

namespace sfwg {

LocalDofLayout dof_layout(const Mesh& mesh, Index t) {
  LocalDofLayout layout;
  const auto& te = mesh.triangle_edges(t);
  for (int k = 0; k < 3; ++k) layout.reversed[k] = te[k].sign < 0;
  return layout;
}

std::array<Point, 2> canonical_edge(const ElementGeometry& geom, const LocalDofLayout& layout, int k) {
  const Point& a = geom.vertices[k];
  const Point& b = geom.vertices[(k + 1) % 3];
  if (layout.reversed[k]) return {b, a};
  return {a, b};
}

LocalMass local_mass_matrix(const ElementGeometry& geom) {
  static const TriangleRule rule = triangle_rule(2);
  const VectorP1Basis basis(geom);
  const PhysicalRule quad = map_to_physical(rule, geom);
  LocalMass m = LocalMass::Zero();
  for (std::size_t q = 0; q < quad.points.size(); ++q) {
    const auto values = basis.evaluate(quad.points[q]);
    m.noalias() += quad.weights[q] * values.transpose() * values;
  }
  return m;
}

WeakGradientMatrix local_weak_gradient(const ElementGeometry& geom, const LocalDofLayout& layout) {
  return local_weak_gradient(geom, layout, local_mass_matrix(geom));
}

WeakGradientMatrix local_weak_gradient(const ElementGeometry& geom, const LocalDofLayout& layout,
                                       const LocalMass& mass) {
  static const SegmentRule rule = edge_rule(3);
  const VectorP1Basis basis(geom);

  // Right-hand sides, one column per local dof.
  WeakGradientMatrix rhs = WeakGradientMatrix::Zero();
  rhs.col(LocalDofLayout::interior()) = -geom.area * basis.divergence();

  for (int k = 0; k < 3; ++k) {
    const auto [start, end] = canonical_edge(geom, layout, k);
    const Point& normal = geom.normals[k];
    const double length = geom.edge_lengths[k];
    for (std::size_t q = 0; q < rule.points.size(); ++q) {
      const double s = rule.points[q];
      const Point x = start + s * (end - start);
      const VectorP1Basis::Coefficients flux = basis.evaluate(x).transpose() * normal;
      const Eigen::Vector2d phi = EdgeP1Basis::evaluate(s);
      for (int m = 0; m < 2; ++m) {
        rhs.col(LocalDofLayout::edge_dof(k, m)) += rule.weights[q] * length * phi(m) * flux;
      }
    }
  }

  const Eigen::LLT<LocalMass> llt(mass);
  if (llt.info() != Eigen::Success) {
    throw MeshError("local_weak_gradient: mass matrix is not positive definite");
  }
  return llt.solve(rhs);
}

LocalMatrix local_stiffness(const WeakGradientMatrix& gradient, const LocalMass& mass) {
  const LocalMatrix a = gradient.transpose() * mass * gradient;
  return 0.5 * (a + a.transpose());
}

LocalMatrix jump_gram_local(const ElementGeometry& geom) {
  static const SegmentRule rule = edge_rule(3);
  LocalMatrix s = LocalMatrix::Zero();
  for (int k = 0; k < 3; ++k) {
    const double length = geom.edge_lengths[k];
    for (std::size_t q = 0; q < rule.points.size(); ++q) {
      // v0 - v_b at the quadrature point as a row over local dofs
      LocalDofs jump = LocalDofs::Zero();
      jump(LocalDofLayout::interior()) = 1.0;
      const Eigen::Vector2d phi = EdgeP1Basis::evaluate(rule.points[q]);
      jump(LocalDofLayout::edge_dof(k, 0)) = -phi(0);
      jump(LocalDofLayout::edge_dof(k, 1)) = -phi(1);
      s.noalias() += rule.weights[q] * length * jump * jump.transpose();
    }
  }
  return 0.5 * (s + s.transpose());
}

// The jump v0 - v_b does not depend on the edge orientation.
LocalMatrix stabilizer_local(const ElementGeometry& geom, const LocalDofLayout& /*layout*/) {
  return jump_gram_local(geom);
}

LocalOperator local_operator(const ElementGeometry& geom, const LocalDofLayout& layout) {
  LocalOperator op;
  op.mass = local_mass_matrix(geom);
  op.gradient = local_weak_gradient(geom, layout, op.mass);
  op.stiffness = local_stiffness(op.gradient, op.mass);
  return op;
}

std::vector<LocalOperator> local_operators(const Mesh& mesh) {
  std::vector<LocalOperator> ops;
  ops.reserve(mesh.num_triangles());
  for (Index t = 0; t < mesh.num_triangles(); ++t) {
    ops.push_back(local_operator(element_geometry(mesh, t), dof_layout(mesh, t)));
  }
  return ops;
}

LocalDofs gather_local(const Mesh& mesh, Index t, const Eigen::Ref<const Eigen::VectorXd>& global) {
  const Index offset = mesh.num_triangles();
  LocalDofs local;
  local(LocalDofLayout::interior()) = global(static_cast<Eigen::Index>(t));
  const auto& te = mesh.triangle_edges(t);
  for (int k = 0; k < 3; ++k) {
    for (int m = 0; m < 2; ++m) {
      local(LocalDofLayout::edge_dof(k, m)) = global(static_cast<Eigen::Index>(offset + 2 * te[k].edge + m));
    }
  }
  return local;
}

}  // namespace sfwg
