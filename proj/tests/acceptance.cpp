// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
// Usage: sfwg_acceptance [output_dir]

#include "sfwg/lemma_checks.hpp"
#include "sfwg/projections.hpp"
#include "sfwg/study.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

using namespace sfwg;
namespace fs = std::filesystem;

namespace {

int failures = 0;

void report(int id, bool ok, const std::string& what) {
  std::printf("%s criterion %d: %s\n", ok ? "PASS" : "FAIL", id, what.c_str());
  if (!ok) ++failures;
}

std::string fmt(const char* format, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, format, v);
  return buf;
}

bool within_factor(double value, double reference, double factor) {
  return value >= reference / factor && value <= reference * factor;
}

// Published SFWG errors for Example 1 on n = 2..64.
constexpr std::array<double, 6> ex1_energy{6.2075e-01, 1.8108e-01, 4.7252e-02, 1.1952e-02, 2.9971e-03, 7.5022e-04};
constexpr std::array<double, 6> ex1_l2{8.8329e-02, 3.0651e-02, 8.3544e-03, 2.1351e-03, 5.3676e-04, 1.3438e-04};

void criterion1() {
  StudyConfig config;
  config.levels = {2, 4, 8, 16, 32, 64};
  const auto rows = convergence_rows(config, Scheme::sfwg);
  bool ok = rows.size() == 6;
  double worst_rate_gap = 0.0, worst_factor = 1.0;
  for (std::size_t i = 0; ok && i < rows.size(); ++i) {
    if (rows[i].failed) {
      ok = false;
      break;
    }
    if (i >= 4) {
      for (double r : {rows[i].energy_rate, rows[i].l2_rate}) {
        ok = ok && r >= 1.9 && r <= 2.1;
        worst_rate_gap = std::max(worst_rate_gap, std::abs(r - 2.0));
      }
    }
    if (rows[i].n >= 4) {
      ok = ok && within_factor(rows[i].energy_err, ex1_energy[i], 2.0) && within_factor(rows[i].l2_err, ex1_l2[i], 2.0);
      worst_factor = std::max({worst_factor, rows[i].energy_err / ex1_energy[i], ex1_energy[i] / rows[i].energy_err,
                               rows[i].l2_err / ex1_l2[i], ex1_l2[i] / rows[i].l2_err});
    }
  }
  report(1, ok,
         "Example 1 rates of the last two refinements in [1.9, 2.1] (max |rate - 2| = " + fmt("%.3f", worst_rate_gap) +
             "), errors for n = 4..64 within factor 2 of the published table (worst " + fmt("%.3f", worst_factor) +
             ")");
}

void criterion2() {
  StudyConfig config;
  config.case_name = "example2";
  config.levels = {2, 4, 8, 16, 32, 64};
  const auto rows = convergence_rows(config, Scheme::sfwg);
  const auto& last = rows.back();
  const bool ok = !last.failed && last.energy_rate >= 0.62 && last.energy_rate <= 0.72 && last.l2_rate >= 1.57 &&
                  last.l2_rate <= 1.77;
  report(2, ok,
         "Example 2 finest energy rate " + fmt("%.3f", last.energy_rate) + " in [0.62, 0.72], L2 rate " +
             fmt("%.3f", last.l2_rate) + " in [1.57, 1.77]");
}

void criterion3() {
  StudyConfig config;
  config.case_name = "affine-patch";
  config.levels = {1, 2, 4, 8};
  config.tolerance = 1e-13;
  double worst = 0.0;
  bool ok = true;
  for (const auto& row : convergence_rows(config, Scheme::sfwg)) {
    ok = ok && !row.failed;
    worst = std::max({worst, row.energy_err, row.l2_err});
  }
  ok = ok && worst <= 1e-9;
  report(3, ok, "affine patch test on n = 1, 2, 4, 8 (CG tol 1e-13): max error " + fmt("%.2e", worst) + " <= 1e-9");
}

void criterion4() {
  using Fn = std::pair<ScalarFunction, VectorFunction>;
  const std::vector<Fn> polys{
      {[](const Point&) { return 1.0; }, [](const Point&) { return Point(0, 0); }},
      {[](const Point& p) { return p.x(); }, [](const Point&) { return Point(1, 0); }},
      {[](const Point& p) { return p.y(); }, [](const Point&) { return Point(0, 1); }},
      {[](const Point& p) { return p.x() * p.x(); }, [](const Point& p) { return Point(2 * p.x(), 0); }},
      {[](const Point& p) { return p.x() * p.y(); }, [](const Point& p) { return Point(p.y(), p.x()); }},
      {[](const Point& p) { return p.y() * p.y(); }, [](const Point& p) { return Point(0, 2 * p.y()); }},
      {[](const Point& p) { return p.x() * p.x() * p.x() - 3 * p.x() * p.y() * p.y(); },
       [](const Point& p) { return Point(3 * p.x() * p.x() - 3 * p.y() * p.y(), -6 * p.x() * p.y()); }},
  };
  double worst = 0.0;
  for (Index n : {1, 2, 4}) {
    const Mesh mesh = generate_unit_square_mesh(n);
    for (const auto& [phi, grad] : polys) {
      const auto lhs = weak_gradient_field(mesh, project_Qh(mesh, phi));
      const auto rhs = project_Qh_vector(mesh, grad);
      for (Index t = 0; t < mesh.num_triangles(); ++t) worst = std::max(worst, (lhs[t] - rhs[t]).cwiseAbs().maxCoeff());
    }
  }
  report(4, worst <= 1e-11,
         "weak gradient of Q_h phi equals projected gradient for polynomials up to degree 3: max " +
             fmt("%.2e", worst) + " <= 1e-11");
}

void criterion5() {
  SamplingOptions options;
  options.samples = 50;
  const auto r = check_error_equation(generate_unit_square_mesh(4), sine_case(), options);
  report(5, r.max_residual <= 1e-6,
         "error equation on n = 4 over 50 random test functions: max relative residual " +
             fmt("%.2e", r.max_residual) + " <= 1e-6");
}

void criterion6() {
  StudyConfig config;
  config.levels = {2, 4, 8, 16};
  config.samples = 200;
  config.output_dir = (fs::temp_directory_path() / "sfwg_acceptance_lemmas").string();
  const LemmaCampaign campaign = run_lemma_campaign(config);
  fs::remove_all(config.output_dir);
  double worst = 0.0, excess = 0.0;
  for (const auto* reports : {&campaign.norm_upper, &campaign.norm_lower}) {
    for (double d : drift(*reports)) {
      if (!std::isnan(d)) worst = std::max(worst, d);
    }
  }
  for (const auto* reports : {&campaign.edge_jump, &campaign.boundary_jump}) {
    for (const auto& r : *reports) excess = std::max(excess, r.oracle_excess);
  }
  const bool ok = check_lemma_campaign(campaign, 0.25).empty() && worst <= 0.25 && excess <= 1.0 + 1e-9;
  report(6, ok,
         "norm equivalence constants on n = 2, 4, 8, 16 (200 samples): max drift " + fmt("%.3f", worst) +
             " <= 0.25, sampled patch ratios / exact patch constants " + fmt("%.4f", excess) + " <= 1");
}

void criterion7() {
  bool ok = true;
  double asym = 0.0, kernel = 0.0, lambda_min = 1e300, cg_gap = 0.0;
  for (Index n : {1, 2, 4, 8}) {
    const Mesh mesh = generate_unit_square_mesh(n);
    validate(mesh);
    const Index v = mesh.num_vertices(), e = mesh.num_edges(), t = mesh.num_triangles();
    ok = ok && (v + t == e + 1);
    const DofMap dofs(mesh);
    for (Scheme scheme : {Scheme::sfwg, Scheme::wg}) {
      const CsrMatrix a = assemble_stiffness(mesh, scheme);
      asym = std::max(asym, a.asymmetry());
      Eigen::VectorXd c = Eigen::VectorXd::Zero(Eigen::Index(dofs.size()));
      for (Index k = 0; k < t; ++k) c(Eigen::Index(k)) = 1.0;
      for (Index k = 0; k < e; ++k) c(Eigen::Index(dofs.edge(k, 0))) = 1.0;
      kernel = std::max(kernel, matvec(a, c).cwiseAbs().maxCoeff());
      if (n <= 4) {
        const auto problem = sine_case();
        const auto system = apply_dirichlet(a, assemble_load(mesh, problem.f), mesh, dofs, problem.g);
        const Eigen::MatrixXd dense = to_dense(system.matrix);
        lambda_min = std::min(lambda_min, Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(dense).eigenvalues().minCoeff());
        if (n == 4) {
          const CgResult r = cg_solve(system.matrix, system.rhs);
          ok = ok && r.converged;
          cg_gap = std::max(cg_gap, (r.x - dense.llt().solve(system.rhs)).cwiseAbs().maxCoeff());
        }
      }
    }
  }
  ok = ok && asym <= 1e-13 && kernel <= 1e-12 && lambda_min > 0.0 && cg_gap <= 1e-8;
  report(7, ok,
         "mesh Euler relation and orientation on n = 1..8; stiffness asymmetry " + fmt("%.1e", asym) +
             " <= 1e-13; constants in kernel " + fmt("%.1e", kernel) + " <= 1e-12; constrained lambda_min " +
             fmt("%.3e", lambda_min) + " > 0 for n <= 4; CG vs dense " + fmt("%.1e", cg_gap) + " <= 1e-8");
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void criterion8(const fs::path& root) {
  std::array<fs::path, 2> dirs{root / "run_a", root / "run_b"};
  for (const auto& dir : dirs) {
    fs::remove_all(dir);
    StudyConfig config;
    config.scheme = "both";
    config.levels = {2, 4, 8, 16};
    config.output_dir = dir.string();
    run_convergence(config);
    config.samples = 50;
    run_lemma_campaign(config);
  }
  std::size_t compared = 0;
  bool ok = true;
  for (const auto& entry : fs::directory_iterator(dirs[0])) {
    if (entry.path().extension() != ".csv") continue;
    ++compared;
    const fs::path other = dirs[1] / entry.path().filename();
    ok = ok && fs::exists(other) && slurp(entry.path()) == slurp(other);
  }
  ok = ok && compared == 6;
  report(8, ok, "two identical runs produce byte-identical CSV files (" + std::to_string(compared) + " compared)");
}

}  // namespace

int main(int argc, char** argv) {
  const fs::path root = argc > 1 ? fs::path(argv[1]) : fs::path("acceptance_out");
  const std::array<void (*)(), 7> checks{criterion1, criterion2, criterion3, criterion4,
                                         criterion5, criterion6, criterion7};
  for (std::size_t i = 0; i < checks.size(); ++i) {
    try {
      checks[i]();
    } catch (const std::exception& e) {
      report(int(i) + 1, false, std::string("exception: ") + e.what());
    }
  }
  try {
    criterion8(root);
  } catch (const std::exception& e) {
    report(8, false, std::string("exception: ") + e.what());
  }
  std::printf("%d of 8 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
