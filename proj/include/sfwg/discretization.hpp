#pragma once

#include "sfwg/manufactured.hpp"
#include "sfwg/mesh.hpp"
#include "sfwg/sparse.hpp"

#include <Eigen/Core>

#include <stdexcept>
#include <string>
#include <vector>

namespace sfwg {

/// Global numbering: interior dof of triangle t is t; coefficient k of the
/// edge trace on edge e is n_interior + 2 e + k.
class DofMap {
public:
  explicit DofMap(const Mesh& mesh);

  [[nodiscard]] Index num_interior() const { return n_interior_; }
  [[nodiscard]] Index num_edge_dofs() const { return n_edge_dofs_; }
  [[nodiscard]] Index size() const { return n_interior_ + n_edge_dofs_; }

  [[nodiscard]] Index interior(Index t) const { return t; }
  [[nodiscard]] Index edge(Index e, int k) const { return n_interior_ + 2 * e + static_cast<Index>(k); }

  /// Sorted; two dofs per boundary edge.
  [[nodiscard]] const std::vector<Index>& boundary_dofs() const { return boundary_dofs_; }
  /// Sorted complement of boundary_dofs().
  [[nodiscard]] const std::vector<Index>& free_dofs() const { return free_dofs_; }

  /// Global indices of the seven local dofs of triangle t.
  [[nodiscard]] std::array<Index, 7> local_to_global(const Mesh& mesh, Index t) const;

private:
  Index n_interior_;
  Index n_edge_dofs_;
  std::vector<Index> boundary_dofs_;
  std::vector<Index> free_dofs_;
};

/// Member of V_h: one constant per triangle and a linear trace per edge.
class FEFunction {
public:
  explicit FEFunction(const DofMap& dofs);
  FEFunction(const DofMap& dofs, Eigen::VectorXd coefficients);

  [[nodiscard]] double interior(Index t) const { return coefficients_(static_cast<Eigen::Index>(t)); }
  void set_interior(Index t, double value) { coefficients_(static_cast<Eigen::Index>(t)) = value; }
  [[nodiscard]] Eigen::Vector2d edge(Index e) const {
    return coefficients_.segment<2>(static_cast<Eigen::Index>(n_interior_ + 2 * e));
  }
  void set_edge(Index e, const Eigen::Vector2d& c) {
    coefficients_.segment<2>(static_cast<Eigen::Index>(n_interior_ + 2 * e)) = c;
  }

  [[nodiscard]] const Eigen::VectorXd& coefficients() const { return coefficients_; }
  [[nodiscard]] Eigen::VectorXd& coefficients() { return coefficients_; }
  [[nodiscard]] Index size() const { return static_cast<Index>(coefficients_.size()); }

private:
  Index n_interior_;
  Eigen::VectorXd coefficients_;
};

enum class Scheme { sfwg, wg };

std::string to_string(Scheme scheme);
Scheme scheme_from_string(const std::string& name);

struct AssemblyStats {
  /// Scalar local-matrix entries accumulated into the global triplet list.
  std::size_t accumulations = 0;
  std::size_t elements = 0;
};

/// Sum of local stiffness matrices (plus stabilizers for Scheme::wg), in
/// element order, CSR with sorted columns.
CsrMatrix assemble_stiffness(const Mesh& mesh, Scheme scheme, AssemblyStats* stats = nullptr);

/// Entry t = int_T f (data_triangle_rule()); edge entries are zero.
Eigen::VectorXd assemble_load(const Mesh& mesh, const ScalarFunction& f);

/// Boundary traces u_b = Q_b g on every boundary edge, zero elsewhere.
Eigen::VectorXd boundary_values(const Mesh& mesh, const DofMap& dofs, const ScalarFunction& g);

/// System restricted to the free dofs after symmetric elimination of the
/// boundary dofs.
struct ConstrainedSystem {
  CsrMatrix matrix;
  Eigen::VectorXd rhs;
  std::vector<Index> free_dofs;
  Eigen::VectorXd boundary;  ///< full-length; prescribed values on boundary dofs

  /// Full coefficient vector from a solution of the reduced system.
  [[nodiscard]] FEFunction expand(const DofMap& dofs, const Eigen::VectorXd& reduced) const;
};

ConstrainedSystem apply_dirichlet(const CsrMatrix& matrix, const Eigen::VectorXd& load, const Mesh& mesh,
                                  const DofMap& dofs, const ScalarFunction& g);

struct SolverOptions {
  double tolerance = 1e-10;
  std::size_t max_iterations = 0;  ///< 0 means 10 * dim
};

class ConvergenceError : public std::runtime_error {
public:
  ConvergenceError(std::size_t iterations, double residual);
  [[nodiscard]] std::size_t iterations() const { return iterations_; }
  [[nodiscard]] double residual() const { return residual_; }

private:
  std::size_t iterations_;
  double residual_;
};

struct PoissonSolution {
  FEFunction u;
  std::size_t iterations = 0;
  double relative_residual = 0.0;
};

/// Solves (grad_w u_h, grad_w v) [+ s(u_h, v)] = (f, v0) for all v in V_h^0
/// with u_b = Q_b g on the boundary. Throws ConvergenceError.
PoissonSolution solve_poisson(const Mesh& mesh, const ManufacturedCase& problem, Scheme scheme,
                              const SolverOptions& options = {});

}  // namespace sfwg
