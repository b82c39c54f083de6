#pragma once

#include "sfwg/discretization.hpp"
#include "sfwg/manufactured.hpp"
#include "sfwg/mesh.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace sfwg {

/// Empirical constant of one discrete inequality on one mesh.
struct ConstantReport {
  std::string lemma_id;
  Index level = 0;          ///< subdivisions n of the unit-square mesh, 0 if unknown
  double h = 0.0;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  double max_ratio = 0.0;   ///< largest sampled ratio (the empirical constant)
  std::size_t skipped = 0;  ///< samples with a vanishing denominator
  /// For two-triangle patch checks: max over samples of sampled ratio divided
  /// by the exact patch constant. Stays <= 1 when the oracle bounds the samples.
  double oracle_excess = 0.0;
};

struct SamplingOptions {
  std::size_t samples = 200;
  std::uint64_t seed = 20201;
  Index level = 0;
};

/// Random member of V_h^0: standard normal dofs, boundary traces zeroed.
Eigen::VectorXd random_vh0(const DofMap& dofs, std::uint64_t seed, std::size_t draw);

/// max |||v||| / ||v||_{1,h} over random v in V_h^0 (id "norm_upper").
ConstantReport check_norm_equiv_upper(const Mesh& mesh, const SamplingOptions& options = {});

/// max ||v||_{1,h} / |||v||| over random v in V_h^0 (id "norm_lower").
ConstantReport check_norm_equiv_lower(const Mesh& mesh, const SamplingOptions& options = {});

/// For every interior edge e shared by T1, T2:
/// ||v0|T1 - v0|T2||_e^2 / (h_T1 ||grad_w v||^2_{T1 u T2}) (id "edge_jump").
ConstantReport check_edge_jump(const Mesh& mesh, const SamplingOptions& options = {});

/// sum_T h_T^{-1} ||v_b - v0||^2_{dT} / |||v|||^2 over random v in V_h^0
/// (id "boundary_jump"). oracle_excess compares the two-triangle patch ratio
/// ||v_b - v0||^2_{dT1 u dT2} / (h_T1 ||grad_w v||^2_{T1 u T2}) with its
/// exact patch constant.
ConstantReport check_boundary_jump(const Mesh& mesh, const SamplingOptions& options = {});

/// Exact patch constants: the largest generalized eigenvalue over the
/// twelve local dofs of the two triangles sharing interior edge e.
double patch_edge_jump_constant(const Mesh& mesh, Index e);
double patch_boundary_jump_constant(const Mesh& mesh, Index e);

/// Exact sup of |||v|||/||v||_{1,h} and ||v||_{1,h}/|||v||| over V_h^0 by a
/// dense generalized eigenproblem. Intended for small meshes.
struct NormEquivalenceBounds {
  double upper = 0.0;
  double lower = 0.0;
};
NormEquivalenceBounds exact_norm_equivalence(const Mesh& mesh);

/// Over random v in V_h^0, max |(grad_w e_h, grad_w v) - l(u, v)| / (1 + |l(u, v)|)
/// with e_h = Q_h u - u_h from a fresh SFWG solve.
struct ErrorEquationReport {
  double max_residual = 0.0;
  double self_residual = 0.0;  ///< same quantity with v = e_h
  std::size_t samples = 0;
};
ErrorEquationReport check_error_equation(const Mesh& mesh, const ManufacturedCase& problem,
                                         const SamplingOptions& options = {}, const SolverOptions& solver = {});

}  // namespace sfwg
