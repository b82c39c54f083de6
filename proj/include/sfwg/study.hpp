#pragma once

#include "sfwg/discretization.hpp"
#include "sfwg/lemma_checks.hpp"

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

namespace sfwg {

struct StudyConfig {
  std::string case_name = "example1";
  std::string scheme = "sfwg";  ///< sfwg | wg | both
  std::vector<Index> levels{2, 4, 8, 16, 32, 64};
  double tolerance = 1e-10;
  std::size_t max_iterations = 0;  ///< 0 means 10 * dim
  std::string output_dir = "results";
  std::uint64_t seed = 20201;
  std::size_t samples = 200;
  bool record_time = false;  ///< write wall-clock seconds into the CSV
};

/// CG tolerance used when none is configured: 1e-13 for affine-patch, whose
/// discrete solution is exact and checked at 1e-9, otherwise 1e-10.
double default_tolerance(const std::string& case_name);

/// Throws std::invalid_argument on an unknown case or scheme, fewer than two
/// levels, or levels that are not strictly increasing.
void validate(const StudyConfig& config);

/// Schemes selected by config.scheme, SFWG first.
std::vector<Scheme> selected_schemes(const StudyConfig& config);

/// Comma-separated positive integers, e.g. "2,4,8".
std::vector<Index> parse_levels(const std::string& text);

/// Sets one key of a flat config: case, scheme, levels, tol, max_iter, out,
/// seed, samples, record_time. Throws std::invalid_argument.
void apply_config_entry(StudyConfig& config, const std::string& key, const std::string& value);

/// key = value lines; blank lines and '#' comments ignored.
void read_config(std::istream& in, StudyConfig& config);
void read_config_file(const std::string& path, StudyConfig& config);

struct ConvergenceRow {
  Index n = 0;
  double energy_err = std::numeric_limits<double>::quiet_NaN();  ///< |||Q_h u - u_h|||
  double energy_rate = std::numeric_limits<double>::quiet_NaN();
  double l2_err = std::numeric_limits<double>::quiet_NaN();  ///< ||Q_0 u - u_0||
  double l2_rate = std::numeric_limits<double>::quiet_NaN();
  Index dofs = 0;
  double seconds = 0.0;
  std::size_t iterations = 0;
  bool failed = false;
};

struct ConvergenceResult {
  Scheme scheme = Scheme::sfwg;
  std::vector<ConvergenceRow> rows;
};

/// Errors at or below this are treated as exact; rates between two exact
/// levels are not computed.
inline constexpr double exact_threshold = 1e-9;

/// rate = log(e_prev / e) / log(n / n_prev); NaN if either error is exact
/// or missing.
double convergence_rate(double e_prev, Index n_prev, double e, Index n);

/// Solves on every level without writing files. A level whose solver fails
/// is kept with failed = true.
std::vector<ConvergenceRow> convergence_rows(const StudyConfig& config, Scheme scheme);

/// convergence_rows for every selected scheme; writes <case>_<scheme>.csv,
/// .md and .svg into config.output_dir, and <case>_both.md when both
/// schemes run.
std::vector<ConvergenceResult> run_convergence(const StudyConfig& config);

enum class TableFormat { csv, markdown };

/// "8.3544E-03"; "failed" for NaN.
std::string format_error(double value);

/// CSV header n,energy_err,energy_rate,l2_err,l2_rate,dofs,seconds. The
/// first row's rates print as "-", rates between exact levels as "exact".
/// Seconds print as "-" unless with_time.
std::string format_table(const std::vector<ConvergenceRow>& rows, TableFormat format, bool with_time = false);

/// Side-by-side Markdown table of several schemes over the same levels.
std::string format_comparison(const std::vector<ConvergenceResult>& results);

/// Writes format_table to path. Throws std::runtime_error on I/O failure.
void emit_table(const std::vector<ConvergenceRow>& rows, TableFormat format, const std::string& path,
                bool with_time = false);

/// Log-log plot of both error columns of every result against h = 1/n, with
/// reference slopes 1, 2/3, 5/3 and 2.
std::string rate_plot_svg(const std::vector<ConvergenceResult>& results, const std::string& title);

struct TimingRow {
  Scheme scheme = Scheme::sfwg;
  Index n = 0;
  Index dofs = 0;
  std::size_t accumulations = 0;  ///< local entries scattered during assembly
  std::size_t elements = 0;
  double assembly_seconds = 0.0;
  double solve_seconds = 0.0;
  std::size_t iterations = 0;
};

/// Times assembly and solve of both schemes on every level, writing
/// timing_<case>.csv and .md. Requires config.scheme == "both".
std::vector<TimingRow> run_timing(const StudyConfig& config);

/// |r_k - r_{k-1}| / r_{k-1} for consecutive reports of one check; NaN for
/// the first.
std::vector<double> drift(const std::vector<ConstantReport>& reports);

struct LemmaCampaign {
  std::vector<ConstantReport> norm_upper;
  std::vector<ConstantReport> norm_lower;
  std::vector<ConstantReport> edge_jump;
  std::vector<ConstantReport> boundary_jump;
};

/// Runs all four constant checks on each level and writes lemma_<id>.csv.
LemmaCampaign run_lemma_campaign(const StudyConfig& config);

/// CSV with columns lemma_id,level,h,max_ratio,samples,seed,skipped,oracle_excess,drift.
std::string format_lemma_csv(const std::vector<ConstantReport>& reports);

/// Acceptance thresholds for --check; each violated condition is returned
/// as one line.
std::vector<std::string> check_convergence(const std::string& case_name, const ConvergenceResult& result);
std::vector<std::string> check_lemma_campaign(const LemmaCampaign& campaign, double max_drift = 0.25);

}  // namespace sfwg
