// Command-line driver for convergence studies, timing and constant checks.

#include "sfwg/lemma_checks.hpp"
#include "sfwg/projections.hpp"
#include "sfwg/study.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <exception>
#include <iostream>
#include <string>

namespace {

struct Flags {
  std::string config_file;
  std::string case_name;
  std::string scheme;
  std::string levels;
  double tolerance = 0.0;
  std::size_t max_iterations = 0;
  std::string out;
  std::uint64_t seed = 0;
  std::size_t samples = 0;
  bool record_time = false;
  bool check = false;
};

void add_common(CLI::App* cmd, Flags& f) {
  cmd->add_option("--config", f.config_file, "flat key = value file; flags given here override it");
  cmd->add_option("--case", f.case_name, "example1 | example2 | affine-patch (default example1)");
  cmd->add_option("--scheme", f.scheme, "sfwg | wg | both (default sfwg; both for timing)");
  cmd->add_option("--levels", f.levels, "comma-separated subdivisions n (default 2,4,8,16,32,64)");
  cmd->add_option("--tol", f.tolerance, "CG relative residual tolerance (default 1e-10, 1e-13 for affine-patch)");
  cmd->add_option("--max-iter", f.max_iterations, "CG iteration cap, 0 = 10 * dim (default 0)");
  cmd->add_option("--out", f.out, "output directory (default results)");
  cmd->add_option("--seed", f.seed, "sampling seed (default 20201)");
  cmd->add_option("--samples", f.samples, "random samples per level (default 200)");
  cmd->add_flag("--record-time", f.record_time, "write wall-clock seconds into the CSV");
  cmd->add_flag("--check", f.check, "exit nonzero when an acceptance threshold is violated");
}

sfwg::StudyConfig make_config(const CLI::App* cmd, const Flags& f, const sfwg::StudyConfig& defaults) {
  sfwg::StudyConfig config = defaults;
  if (!f.config_file.empty()) sfwg::read_config_file(f.config_file, config);
  if (cmd->count("--case")) config.case_name = f.case_name;
  if (cmd->count("--scheme")) config.scheme = f.scheme;
  if (cmd->count("--levels")) config.levels = sfwg::parse_levels(f.levels);
  if (cmd->count("--tol")) config.tolerance = f.tolerance;
  if (cmd->count("--max-iter")) config.max_iterations = f.max_iterations;
  if (cmd->count("--out")) config.output_dir = f.out;
  if (cmd->count("--seed")) config.seed = f.seed;
  if (cmd->count("--samples")) config.samples = f.samples;
  if (f.record_time) config.record_time = true;
  if (config.tolerance == 0.0) config.tolerance = sfwg::default_tolerance(config.case_name);
  return config;
}

int report_violations(const std::vector<std::string>& violations) {
  for (const auto& v : violations) std::cerr << "check failed: " << v << '\n';
  return violations.empty() ? 0 : 2;
}

int cmd_solve(const sfwg::StudyConfig& config) {
  const auto problem = sfwg::case_by_name(config.case_name);
  for (sfwg::Scheme scheme : sfwg::selected_schemes(config)) {
    for (sfwg::Index n : config.levels) {
      const sfwg::Mesh mesh = sfwg::generate_unit_square_mesh(n);
      const sfwg::DofMap dofs(mesh);
      const auto solution =
          sfwg::solve_poisson(mesh, problem, scheme, sfwg::SolverOptions{config.tolerance, config.max_iterations});
      const sfwg::FEFunction error(dofs,
                                   sfwg::project_Qh(mesh, problem.u).coefficients() - solution.u.coefficients());
      const auto l2 = sfwg::l2_errors(mesh, problem, solution.u);
      std::printf("%s %s n=%zu dofs=%zu cg_iterations=%zu residual=%.3e energy=%s l2_proj=%s l2=%s\n",
                  config.case_name.c_str(), sfwg::to_string(scheme).c_str(), n, dofs.size(), solution.iterations,
                  solution.relative_residual, sfwg::format_error(sfwg::energy_norm(mesh, error)).c_str(),
                  sfwg::format_error(l2.projection).c_str(), sfwg::format_error(l2.exact).c_str());
    }
  }
  return 0;
}

int cmd_convergence(const sfwg::StudyConfig& config, bool check) {
  const auto results = sfwg::run_convergence(config);
  std::vector<std::string> violations;
  for (const auto& result : results) {
    std::cout << sfwg::to_string(result.scheme) << ":\n"
              << sfwg::format_table(result.rows, sfwg::TableFormat::markdown, config.record_time);
    for (const auto& row : result.rows) {
      if (row.failed) violations.push_back("solver failed at n = " + std::to_string(row.n));
    }
    if (check) {
      for (auto& v : sfwg::check_convergence(config.case_name, result)) violations.push_back(std::move(v));
    }
  }
  std::cout << "wrote " << config.output_dir << '\n';
  return report_violations(violations);
}

int cmd_timing(const sfwg::StudyConfig& config) {
  const auto rows = sfwg::run_timing(config);
  for (const auto& r : rows) {
    std::printf("%-4s n=%-4zu dofs=%-7zu accumulations/element=%zu assembly=%.4fs solve=%.4fs iterations=%zu\n",
                sfwg::to_string(r.scheme).c_str(), r.n, r.dofs, r.elements ? r.accumulations / r.elements : 0,
                r.assembly_seconds, r.solve_seconds, r.iterations);
  }
  return 0;
}

int cmd_lemmas(const sfwg::StudyConfig& config, bool check) {
  const auto campaign = sfwg::run_lemma_campaign(config);
  for (const auto* reports :
       {&campaign.norm_upper, &campaign.norm_lower, &campaign.edge_jump, &campaign.boundary_jump}) {
    std::cout << sfwg::format_lemma_csv(*reports);
  }
  return check ? report_violations(sfwg::check_lemma_campaign(campaign)) : 0;
}

int cmd_mesh_info(const sfwg::StudyConfig& config, const std::string& write_path) {
  for (sfwg::Index n : config.levels) {
    const sfwg::Mesh mesh = sfwg::generate_unit_square_mesh(n);
    sfwg::validate(mesh);
    const sfwg::DofMap dofs(mesh);
    std::printf("n=%zu vertices=%zu edges=%zu triangles=%zu boundary_edges=%zu h=%.6f min_angle=%.2f dofs=%zu\n", n,
                mesh.num_vertices(), mesh.num_edges(), mesh.num_triangles(), mesh.num_boundary_edges(),
                sfwg::mesh_size(mesh), sfwg::min_angle_degrees(mesh), dofs.size());
    if (!write_path.empty()) {
      const std::string path = write_path + "_" + std::to_string(n) + ".mesh";
      sfwg::write_mesh_file(path, mesh);
      std::printf("wrote %s\n", path.c_str());
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lowest-order stabilizer-free weak Galerkin solver for the Poisson problem on the unit square"};
  app.require_subcommand(1);

  Flags solve_flags, conv_flags, timing_flags, lemma_flags, mesh_flags;
  auto* solve = app.add_subcommand("solve", "solve on each level and print errors");
  add_common(solve, solve_flags);
  auto* convergence = app.add_subcommand("convergence", "convergence table, CSV/Markdown/SVG output");
  add_common(convergence, conv_flags);
  auto* timing = app.add_subcommand("timing", "time assembly and solve of SFWG against WG");
  add_common(timing, timing_flags);
  auto* lemmas = app.add_subcommand("lemmas", "sample the norm-equivalence and jump constants");
  add_common(lemmas, lemma_flags);
  auto* mesh_info = app.add_subcommand("mesh-info", "print mesh statistics for each level");
  add_common(mesh_info, mesh_flags);
  std::string write_mesh;
  mesh_info->add_option("--write", write_mesh, "write each mesh to <prefix>_<n>.mesh");

  CLI11_PARSE(app, argc, argv);

  try {
    sfwg::StudyConfig defaults;
    defaults.tolerance = 0.0;  // resolved per case in make_config
    if (*solve) {
      auto config = make_config(solve, solve_flags, defaults);
      return cmd_solve(config);
    }
    if (*convergence) {
      auto config = make_config(convergence, conv_flags, defaults);
      sfwg::validate(config);
      return cmd_convergence(config, conv_flags.check);
    }
    if (*timing) {
      defaults.scheme = "both";
      auto config = make_config(timing, timing_flags, defaults);
      sfwg::validate(config);
      return cmd_timing(config);
    }
    if (*lemmas) {
      defaults.levels = {2, 4, 8, 16};
      auto config = make_config(lemmas, lemma_flags, defaults);
      sfwg::validate(config);
      return cmd_lemmas(config, lemma_flags.check);
    }
    if (*mesh_info) {
      defaults.levels = {1, 2, 4, 8, 16, 32, 64};
      auto config = make_config(mesh_info, mesh_flags, defaults);
      return cmd_mesh_info(config, write_mesh);
    }
  } catch (const sfwg::ConvergenceError& e) {
    std::cerr << "solver failure: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
