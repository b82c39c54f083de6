#include "sfwg/lemma_checks.hpp"

#include "sfwg/projections.hpp"
#include "sfwg/weak_gradient.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <random>

namespace sfwg {

namespace {

constexpr double tiny = 1e-13;

// Per-triangle quadratic forms needed by every check.
struct ElementForms {
  std::vector<LocalMatrix> stiffness;
  std::vector<LocalMatrix> jump;  // unweighted <v0 - v_b, v0 - v_b>_{dT}
  std::vector<double> diameter;

  explicit ElementForms(const Mesh& mesh) {
    for (Index t = 0; t < mesh.num_triangles(); ++t) {
      const auto geom = element_geometry(mesh, t);
      stiffness.push_back(local_operator(geom, dof_layout(mesh, t)).stiffness);
      jump.push_back(jump_gram_local(geom));
      diameter.push_back(geom.diameter);
    }
  }
};

struct ElementValues {
  std::vector<double> energy;  // ||grad_w v||_T^2
  std::vector<double> jump;    // ||v0 - v_b||_{dT}^2
  double energy_total = 0.0;
  double weighted_jump_total = 0.0;  // sum_T h_T^{-1} ||v0 - v_b||_{dT}^2
};

ElementValues evaluate(const Mesh& mesh, const ElementForms& forms, const Eigen::VectorXd& v) {
  ElementValues out;
  out.energy.resize(mesh.num_triangles());
  out.jump.resize(mesh.num_triangles());
  for (Index t = 0; t < mesh.num_triangles(); ++t) {
    const LocalDofs local = gather_local(mesh, t, v);
    out.energy[t] = local.dot(forms.stiffness[t] * local);
    out.jump[t] = local.dot(forms.jump[t] * local);
    out.energy_total += out.energy[t];
    out.weighted_jump_total += out.jump[t] / forms.diameter[t];
  }
  return out;
}

ConstantReport make_report(const std::string& id, const Mesh& mesh, const SamplingOptions& options) {
  ConstantReport r;
  r.lemma_id = id;
  r.level = options.level;
  r.h = mesh_size(mesh);
  r.samples = options.samples;
  r.seed = options.seed;
  return r;
}

// Twelve dofs of the patch T1 u T2: v0 on T1, v0 on T2, then two per distinct edge.
struct Patch {
  Index t1 = invalid_index;
  Index t2 = invalid_index;
  std::array<std::array<int, 7>, 2> local_to_patch{};
  Eigen::MatrixXd stiffness;  // ||grad_w v||^2_{T1 u T2}
  Eigen::MatrixXd jump;       // ||v_b - v0||^2_{dT1 u dT2}
  Eigen::MatrixXd shared_jump;  // ||v0|T1 - v0|T2||^2_e
  double h1 = 0.0;
};

Patch build_patch(const Mesh& mesh, Index e) {
  const auto& adj = mesh.edge_triangles(e);
  if (adj[1] == invalid_index) {
    throw std::invalid_argument("patch constants need an interior edge");
  }
  Patch p;
  p.t1 = adj[0];
  p.t2 = adj[1];
  std::vector<Index> edges;
  for (int side = 0; side < 2; ++side) {
    const Index t = side == 0 ? p.t1 : p.t2;
    p.local_to_patch[side][0] = side;
    const auto& te = mesh.triangle_edges(t);
    for (int k = 0; k < 3; ++k) {
      auto it = std::find(edges.begin(), edges.end(), te[k].edge);
      const auto slot = static_cast<int>(it - edges.begin());
      if (it == edges.end()) edges.push_back(te[k].edge);
      p.local_to_patch[side][LocalDofLayout::edge_dof(k, 0)] = 2 + 2 * slot;
      p.local_to_patch[side][LocalDofLayout::edge_dof(k, 1)] = 3 + 2 * slot;
    }
  }
  const int n = 2 + 2 * static_cast<int>(edges.size());
  p.stiffness = Eigen::MatrixXd::Zero(n, n);
  p.jump = Eigen::MatrixXd::Zero(n, n);
  for (int side = 0; side < 2; ++side) {
    const Index t = side == 0 ? p.t1 : p.t2;
    const auto geom = element_geometry(mesh, t);
    const LocalMatrix a = local_operator(geom, dof_layout(mesh, t)).stiffness;
    const LocalMatrix s = jump_gram_local(geom);
    const auto& map = p.local_to_patch[side];
    for (int i = 0; i < 7; ++i) {
      for (int j = 0; j < 7; ++j) {
        p.stiffness(map[i], map[j]) += a(i, j);
        p.jump(map[i], map[j]) += s(i, j);
      }
    }
    if (side == 0) p.h1 = geom.diameter;
  }
  const auto& ev = mesh.edges()[e];
  const double length = (mesh.vertex(ev[1]) - mesh.vertex(ev[0])).norm();
  p.shared_jump = Eigen::MatrixXd::Zero(n, n);
  p.shared_jump(0, 0) = p.shared_jump(1, 1) = length;
  p.shared_jump(0, 1) = p.shared_jump(1, 0) = -length;
  return p;
}

// sup_v (v^T N v) / (v^T D v) for symmetric PSD D whose kernel N annihilates.
double max_generalized_eigenvalue(const Eigen::MatrixXd& numerator, const Eigen::MatrixXd& denominator) {
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(denominator);
  const Eigen::VectorXd& lambda = eig.eigenvalues();
  const double cutoff = 1e-10 * lambda.cwiseAbs().maxCoeff();
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < lambda.size(); ++i) {
    if (lambda(i) > cutoff) keep.push_back(i);
  }
  Eigen::MatrixXd w(denominator.rows(), static_cast<Eigen::Index>(keep.size()));
  for (std::size_t k = 0; k < keep.size(); ++k) {
    w.col(static_cast<Eigen::Index>(k)) = eig.eigenvectors().col(keep[k]) / std::sqrt(lambda(keep[k]));
  }
  const Eigen::MatrixXd reduced = w.transpose() * numerator * w;
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(0.5 * (reduced + reduced.transpose())).eigenvalues().maxCoeff();
}

}  // namespace

Eigen::VectorXd random_vh0(const DofMap& dofs, std::uint64_t seed, std::size_t draw) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(draw)};
  std::mt19937_64 rng(seq);
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::VectorXd v(static_cast<Eigen::Index>(dofs.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = normal(rng);
  for (Index d : dofs.boundary_dofs()) v(static_cast<Eigen::Index>(d)) = 0.0;
  return v;
}

ConstantReport check_norm_equiv_upper(const Mesh& mesh, const SamplingOptions& options) {
  const DofMap dofs(mesh);
  const ElementForms forms(mesh);
  ConstantReport report = make_report("norm_upper", mesh, options);
  for (std::size_t s = 0; s < options.samples; ++s) {
    const auto values = evaluate(mesh, forms, random_vh0(dofs, options.seed, s));
    const double h1 = std::sqrt(values.weighted_jump_total);
    if (h1 < tiny) {
      ++report.skipped;
      continue;
    }
    report.max_ratio = std::max(report.max_ratio, std::sqrt(values.energy_total) / h1);
  }
  return report;
}

ConstantReport check_norm_equiv_lower(const Mesh& mesh, const SamplingOptions& options) {
  const DofMap dofs(mesh);
  const ElementForms forms(mesh);
  ConstantReport report = make_report("norm_lower", mesh, options);
  for (std::size_t s = 0; s < options.samples; ++s) {
    const auto values = evaluate(mesh, forms, random_vh0(dofs, options.seed, s));
    const double energy = std::sqrt(values.energy_total);
    if (energy < tiny) {
      ++report.skipped;
      continue;
    }
    report.max_ratio = std::max(report.max_ratio, std::sqrt(values.weighted_jump_total) / energy);
  }
  return report;
}

ConstantReport check_edge_jump(const Mesh& mesh, const SamplingOptions& options) {
  const DofMap dofs(mesh);
  const ElementForms forms(mesh);
  ConstantReport report = make_report("edge_jump", mesh, options);

  std::vector<Index> interior_edges;
  std::vector<double> oracle;
  for (Index e = 0; e < mesh.num_edges(); ++e) {
    if (mesh.is_boundary_edge(e)) continue;
    interior_edges.push_back(e);
    oracle.push_back(patch_edge_jump_constant(mesh, e));
  }
  if (interior_edges.empty()) {
    throw std::invalid_argument("check_edge_jump: mesh has no interior edge");
  }

  for (std::size_t s = 0; s < options.samples; ++s) {
    const Eigen::VectorXd v = random_vh0(dofs, options.seed, s);
    const auto values = evaluate(mesh, forms, v);
    for (std::size_t k = 0; k < interior_edges.size(); ++k) {
      const Index e = interior_edges[k];
      const auto& adj = mesh.edge_triangles(e);
      const auto& ev = mesh.edges()[e];
      const double length = (mesh.vertex(ev[1]) - mesh.vertex(ev[0])).norm();
      const double diff = v(static_cast<Eigen::Index>(adj[0])) - v(static_cast<Eigen::Index>(adj[1]));
      const double denom = forms.diameter[adj[0]] * (values.energy[adj[0]] + values.energy[adj[1]]);
      if (denom < tiny * tiny) {
        ++report.skipped;
        continue;
      }
      const double ratio = length * diff * diff / denom;
      report.max_ratio = std::max(report.max_ratio, ratio);
      report.oracle_excess = std::max(report.oracle_excess, ratio / oracle[k]);
    }
  }
  return report;
}

ConstantReport check_boundary_jump(const Mesh& mesh, const SamplingOptions& options) {
  const DofMap dofs(mesh);
  const ElementForms forms(mesh);
  ConstantReport report = make_report("boundary_jump", mesh, options);

  std::vector<Index> interior_edges;
  std::vector<double> oracle;
  for (Index e = 0; e < mesh.num_edges(); ++e) {
    if (mesh.is_boundary_edge(e)) continue;
    interior_edges.push_back(e);
    oracle.push_back(patch_boundary_jump_constant(mesh, e));
  }

  for (std::size_t s = 0; s < options.samples; ++s) {
    const auto values = evaluate(mesh, forms, random_vh0(dofs, options.seed, s));
    if (values.energy_total < tiny * tiny) {
      ++report.skipped;
      continue;
    }
    report.max_ratio = std::max(report.max_ratio, values.weighted_jump_total / values.energy_total);

    for (std::size_t k = 0; k < interior_edges.size(); ++k) {
      const auto& adj = mesh.edge_triangles(interior_edges[k]);
      const double denom = forms.diameter[adj[0]] * (values.energy[adj[0]] + values.energy[adj[1]]);
      if (denom < tiny * tiny) continue;
      const double ratio = (values.jump[adj[0]] + values.jump[adj[1]]) / denom;
      report.oracle_excess = std::max(report.oracle_excess, ratio / oracle[k]);
    }
  }
  return report;
}

double patch_edge_jump_constant(const Mesh& mesh, Index e) {
  const Patch p = build_patch(mesh, e);
  return max_generalized_eigenvalue(p.shared_jump, p.h1 * p.stiffness);
}

double patch_boundary_jump_constant(const Mesh& mesh, Index e) {
  const Patch p = build_patch(mesh, e);
  return max_generalized_eigenvalue(p.jump, p.h1 * p.stiffness);
}

NormEquivalenceBounds exact_norm_equivalence(const Mesh& mesh) {
  const DofMap dofs(mesh);
  const ElementForms forms(mesh);
  const auto n = static_cast<Eigen::Index>(dofs.size());
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(n, n);
  for (Index t = 0; t < mesh.num_triangles(); ++t) {
    const auto map = dofs.local_to_global(mesh, t);
    for (int i = 0; i < 7; ++i) {
      for (int j = 0; j < 7; ++j) {
        const auto gi = static_cast<Eigen::Index>(map[i]);
        const auto gj = static_cast<Eigen::Index>(map[j]);
        a(gi, gj) += forms.stiffness[t](i, j);
        s(gi, gj) += forms.jump[t](i, j) / forms.diameter[t];
      }
    }
  }
  const auto& free = dofs.free_dofs();
  const auto m = static_cast<Eigen::Index>(free.size());
  Eigen::MatrixXd af(m, m), sf(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) {
      af(i, j) = a(static_cast<Eigen::Index>(free[i]), static_cast<Eigen::Index>(free[j]));
      sf(i, j) = s(static_cast<Eigen::Index>(free[i]), static_cast<Eigen::Index>(free[j]));
    }
  }
  // Both forms are definite on V_h^0, so the generalized problems are regular.
  NormEquivalenceBounds bounds;
  bounds.upper = std::sqrt(Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd>(af, sf).eigenvalues().maxCoeff());
  bounds.lower = std::sqrt(Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd>(sf, af).eigenvalues().maxCoeff());
  return bounds;
}

ErrorEquationReport check_error_equation(const Mesh& mesh, const ManufacturedCase& problem,
                                         const SamplingOptions& options, const SolverOptions& solver) {
  const DofMap dofs(mesh);
  const ElementForms forms(mesh);
  const PoissonSolution solution = solve_poisson(mesh, problem, Scheme::sfwg, solver);
  const Eigen::VectorXd error = project_Qh(mesh, problem.u).coefficients() - solution.u.coefficients();
  const VectorP1Field projected = project_Qh_vector(mesh, problem.grad_u);

  auto residual = [&](const Eigen::VectorXd& v) {
    double lhs = 0.0;
    for (Index t = 0; t < mesh.num_triangles(); ++t) {
      lhs += gather_local(mesh, t, error).dot(forms.stiffness[t] * gather_local(mesh, t, v));
    }
    const double rhs = ell_functional(mesh, problem, projected, v);
    return std::abs(lhs - rhs) / (1.0 + std::abs(rhs));
  };

  ErrorEquationReport report;
  report.samples = options.samples;
  for (std::size_t s = 0; s < options.samples; ++s) {
    report.max_residual = std::max(report.max_residual, residual(random_vh0(dofs, options.seed, s)));
  }
  report.self_residual = residual(error);
  return report;
}

}  // namespace sfwg
