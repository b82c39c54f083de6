#pragma once

#include "sfwg/mesh.hpp"
#include "sfwg/quadrature.hpp"

#include <Eigen/Core>

#include <array>
#include <vector>

namespace sfwg {

/// Seven local unknowns per triangle: index 0 is the interior constant v0,
/// index 1 + 2k + m is coefficient m (phi_1, phi_2) of v_b on local edge k.
/// Edge coefficients are always read in the edge's canonical orientation,
/// so both neighbours of an interior edge agree on their meaning.
struct LocalDofLayout {
  static constexpr int size = 7;
  /// Local edge k is traversed against its canonical orientation.
  std::array<bool, 3> reversed{};

  static constexpr int interior() { return 0; }
  static constexpr int edge_dof(int k, int m) { return 1 + 2 * k + m; }
};

LocalDofLayout dof_layout(const Mesh& mesh, Index t);

/// Canonical start/end points of local edge k.
std::array<Point, 2> canonical_edge(const ElementGeometry& geom, const LocalDofLayout& layout, int k);

using LocalMass = Eigen::Matrix<double, 6, 6>;
using WeakGradientMatrix = Eigen::Matrix<double, 6, 7>;
using LocalMatrix = Eigen::Matrix<double, 7, 7>;
using LocalDofs = Eigen::Matrix<double, 7, 1>;

/// Per-element operators: weak gradient G (local dofs -> VectorP1Basis
/// coefficients), mass M of [P1(T)]^2 and stiffness A = G^T M G.
struct LocalOperator {
  WeakGradientMatrix gradient;
  LocalMass mass;
  LocalMatrix stiffness;
};

/// M_ij = int_T q_i . q_j, degree-2 quadrature (exact).
LocalMass local_mass_matrix(const ElementGeometry& geom);

/// Solves (grad_w v, q)_T = -(v0, div q)_T + <v_b, q.n>_{dT} for every
/// q in [P1(T)]^2, one column per unit local dof. Throws MeshError if M is
/// not positive definite.
WeakGradientMatrix local_weak_gradient(const ElementGeometry& geom, const LocalDofLayout& layout);
WeakGradientMatrix local_weak_gradient(const ElementGeometry& geom, const LocalDofLayout& layout,
                                       const LocalMass& mass);

/// G^T M G, symmetrized.
LocalMatrix local_stiffness(const WeakGradientMatrix& gradient, const LocalMass& mass);

/// <v0 - v_b, w0 - w_b>_{dT} as a 7x7 Gram matrix (degree-3 edge rule).
LocalMatrix jump_gram_local(const ElementGeometry& geom);

/// Stabilizer of the classical WG comparison scheme,
/// s(v, w) = <v0 - v_b, w0 - w_b>_{dT}, without an h_T weight.
LocalMatrix stabilizer_local(const ElementGeometry& geom, const LocalDofLayout& layout);

LocalOperator local_operator(const ElementGeometry& geom, const LocalDofLayout& layout);

/// Local operators for every triangle, in triangle order.
std::vector<LocalOperator> local_operators(const Mesh& mesh);

/// Interior + edge dofs of v restricted to triangle t (see LocalDofLayout).
/// `global` is indexed as in DofMap: triangles first, then 2 per edge.
LocalDofs gather_local(const Mesh& mesh, Index t, const Eigen::Ref<const Eigen::VectorXd>& global);

}  // namespace sfwg
