#pragma once

#include "sfwg/discretization.hpp"
#include "sfwg/manufactured.hpp"
#include "sfwg/mesh.hpp"
#include "sfwg/quadrature.hpp"
#include "sfwg/weak_gradient.hpp"

#include <vector>

namespace sfwg {

using VectorP1Field = std::vector<VectorP1Basis::Coefficients>;

/// Q_h phi = {Q_0 phi, Q_b phi}: element means (data_triangle_rule()) and edge
/// Legendre moments (degree-9 Gauss).
FEFunction project_Qh(const Mesh& mesh, const ScalarFunction& phi);

/// Element-wise L2 projection of w onto [P1(T)]^2, coefficients in
/// VectorP1Basis of each element.
VectorP1Field project_Qh_vector(const Mesh& mesh, const VectorFunction& w);

/// Weak gradient of v on every element, coefficients in VectorP1Basis.
VectorP1Field weak_gradient_field(const Mesh& mesh, const FEFunction& v);

/// |||v|||^2 = sum_T (grad_w v, grad_w v)_T.
double energy_norm(const Mesh& mesh, const FEFunction& v);
double energy_norm(const Mesh& mesh, const std::vector<LocalOperator>& ops, const Eigen::VectorXd& v);

/// ||v||_{1,h}^2 = sum_T h_T^{-1} ||v0 - v_b||^2_{dT}; the gradient of the
/// piecewise constant v0 vanishes.
double h1_discrete_seminorm(const Mesh& mesh, const FEFunction& v);

struct L2Errors {
  double projection = 0.0;  ///< ||Q_0 u - u_0||
  double exact = 0.0;       ///< ||u - u_0||
};

L2Errors l2_errors(const Mesh& mesh, const ManufacturedCase& problem, const FEFunction& uh);

/// l(u, v) = sum_T <(grad u - Q_h grad u) . n, v0 - v_b>_{dT}, degree-9
/// edge quadrature on both sides of every edge.
double ell_functional(const Mesh& mesh, const ManufacturedCase& problem, const FEFunction& v);
/// Same with a precomputed projection of grad u.
double ell_functional(const Mesh& mesh, const ManufacturedCase& problem, const VectorP1Field& projected_gradient,
                      const Eigen::VectorXd& v);

}  // namespace sfwg
