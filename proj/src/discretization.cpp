#include "sfwg/discretization.hpp"

#include "sfwg/quadrature.hpp"
#include "sfwg/weak_gradient.hpp"

#include <sstream>

namespace sfwg {

DofMap::DofMap(const Mesh& mesh) : n_interior_(mesh.num_triangles()), n_edge_dofs_(2 * mesh.num_edges()) {
  for (Index e = 0; e < mesh.num_edges(); ++e) {
    if (mesh.is_boundary_edge(e)) {
      boundary_dofs_.push_back(edge(e, 0));
      boundary_dofs_.push_back(edge(e, 1));
    }
  }
  free_dofs_.reserve(size() - boundary_dofs_.size());
  auto next_boundary = boundary_dofs_.begin();
  for (Index d = 0; d < size(); ++d) {
    if (next_boundary != boundary_dofs_.end() && *next_boundary == d) {
      ++next_boundary;
    } else {
      free_dofs_.push_back(d);
    }
  }
}

std::array<Index, 7> DofMap::local_to_global(const Mesh& mesh, Index t) const {
  std::array<Index, 7> map{};
  map[0] = interior(t);
  const auto& te = mesh.triangle_edges(t);
  for (int k = 0; k < 3; ++k) {
    map[1 + 2 * k] = edge(te[k].edge, 0);
    map[2 + 2 * k] = edge(te[k].edge, 1);
  }
  return map;
}

FEFunction::FEFunction(const DofMap& dofs)
    : n_interior_(dofs.num_interior()), coefficients_(Eigen::VectorXd::Zero(static_cast<Eigen::Index>(dofs.size()))) {}

FEFunction::FEFunction(const DofMap& dofs, Eigen::VectorXd coefficients)
    : n_interior_(dofs.num_interior()), coefficients_(std::move(coefficients)) {
  if (static_cast<Index>(coefficients_.size()) != dofs.size()) {
    throw std::invalid_argument("FEFunction: coefficient vector has the wrong length");
  }
}

std::string to_string(Scheme scheme) { return scheme == Scheme::sfwg ? "sfwg" : "wg"; }

Scheme scheme_from_string(const std::string& name) {
  if (name == "sfwg") return Scheme::sfwg;
  if (name == "wg") return Scheme::wg;
  throw std::invalid_argument("unknown scheme '" + name + "' (expected sfwg or wg)");
}

CsrMatrix assemble_stiffness(const Mesh& mesh, Scheme scheme, AssemblyStats* stats) {
  const DofMap dofs(mesh);
  std::vector<Triplet> triplets;
  const std::size_t blocks = scheme == Scheme::wg ? 2 : 1;
  triplets.reserve(blocks * 49 * mesh.num_triangles());

  auto scatter = [&](const LocalMatrix& local, const std::array<Index, 7>& map) {
    for (int i = 0; i < 7; ++i) {
      for (int j = 0; j < 7; ++j) triplets.push_back({map[i], map[j], local(i, j)});
    }
  };

  for (Index t = 0; t < mesh.num_triangles(); ++t) {
    const auto geom = element_geometry(mesh, t);
    const auto layout = dof_layout(mesh, t);
    const auto map = dofs.local_to_global(mesh, t);
    scatter(local_operator(geom, layout).stiffness, map);
    if (scheme == Scheme::wg) scatter(stabilizer_local(geom, layout), map);
  }

  if (stats != nullptr) {
    stats->accumulations = triplets.size();
    stats->elements = mesh.num_triangles();
  }
  return CsrMatrix::from_triplets(dofs.size(), triplets);
}

Eigen::VectorXd assemble_load(const Mesh& mesh, const ScalarFunction& f) {
  const TriangleRule& rule = data_triangle_rule();
  const DofMap dofs(mesh);
  Eigen::VectorXd load = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(dofs.size()));
  for (Index t = 0; t < mesh.num_triangles(); ++t) {
    const auto quad = map_to_physical(rule, element_geometry(mesh, t));
    double sum = 0.0;
    for (std::size_t q = 0; q < quad.points.size(); ++q) sum += quad.weights[q] * f(quad.points[q]);
    load(static_cast<Eigen::Index>(dofs.interior(t))) = sum;
  }
  return load;
}

Eigen::VectorXd boundary_values(const Mesh& mesh, const DofMap& dofs, const ScalarFunction& g) {
  Eigen::VectorXd values = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(dofs.size()));
  for (Index e = 0; e < mesh.num_edges(); ++e) {
    if (!mesh.is_boundary_edge(e)) continue;
    const auto& ev = mesh.edges()[e];
    values.segment<2>(static_cast<Eigen::Index>(dofs.edge(e, 0))) =
        edge_moments(mesh.vertex(ev[0]), mesh.vertex(ev[1]), g);
  }
  return values;
}

FEFunction ConstrainedSystem::expand(const DofMap& dofs, const Eigen::VectorXd& reduced) const {
  if (static_cast<std::size_t>(reduced.size()) != free_dofs.size()) {
    throw std::invalid_argument("expand: reduced vector has the wrong length");
  }
  Eigen::VectorXd full = boundary;
  for (std::size_t k = 0; k < free_dofs.size(); ++k) {
    full(static_cast<Eigen::Index>(free_dofs[k])) = reduced(static_cast<Eigen::Index>(k));
  }
  return FEFunction(dofs, std::move(full));
}

ConstrainedSystem apply_dirichlet(const CsrMatrix& matrix, const Eigen::VectorXd& load, const Mesh& mesh,
                                  const DofMap& dofs, const ScalarFunction& g) {
  ConstrainedSystem system;
  system.boundary = boundary_values(mesh, dofs, g);
  system.free_dofs = dofs.free_dofs();
  system.matrix = matrix.submatrix(system.free_dofs);

  const Eigen::VectorXd lifted = load - matvec(matrix, system.boundary);
  system.rhs.resize(static_cast<Eigen::Index>(system.free_dofs.size()));
  for (std::size_t k = 0; k < system.free_dofs.size(); ++k) {
    system.rhs(static_cast<Eigen::Index>(k)) = lifted(static_cast<Eigen::Index>(system.free_dofs[k]));
  }
  return system;
}

namespace {

std::string convergence_message(std::size_t iterations, double residual) {
  std::ostringstream msg;
  msg << "conjugate gradients did not converge: " << iterations << " iterations, relative residual " << residual;
  return msg.str();
}

}  // namespace

ConvergenceError::ConvergenceError(std::size_t iterations, double residual)
    : std::runtime_error(convergence_message(iterations, residual)), iterations_(iterations), residual_(residual) {}

PoissonSolution solve_poisson(const Mesh& mesh, const ManufacturedCase& problem, Scheme scheme,
                              const SolverOptions& options) {
  const DofMap dofs(mesh);
  const CsrMatrix a = assemble_stiffness(mesh, scheme);
  const Eigen::VectorXd load = assemble_load(mesh, problem.f);
  const ConstrainedSystem system = apply_dirichlet(a, load, mesh, dofs, problem.g);

  CgOptions cg;
  cg.tolerance = options.tolerance;
  cg.max_iterations = options.max_iterations;
  const CgResult result = cg_solve(system.matrix, system.rhs, cg);
  if (!result.converged) {
    throw ConvergenceError(result.iterations, result.relative_residual);
  }
  return PoissonSolution{system.expand(dofs, result.x), result.iterations, result.relative_residual};
}

}  // namespace sfwg
