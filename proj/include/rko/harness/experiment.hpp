#ifndef RKO_HARNESS_EXPERIMENT_HPP_
#define RKO_HARNESS_EXPERIMENT_HPP_

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rko/harness/metrics.hpp"
#include "rko/params.hpp"
#include "rko/solvers.hpp"

namespace rko::harness {

inline constexpr std::string_view kPortfolioMethod = "portfolio";

struct ExperimentConfig {
  ProblemKind problem = ProblemKind::ANpMP;
  std::vector<std::string> instances;
  /// Solver names and/or "portfolio".
  std::vector<std::string> methods{std::string(kPortfolioMethod)};
  std::size_t runs = 5;
  /// Empty means the per-problem default.
  std::optional<double> time_limit;
  std::uint64_t max_evaluations = 0;
  std::size_t alpha = 2;
  std::uint64_t seed = 1;
  std::string output = "results";
  std::string bks_path;
  bool q_learning = false;
  std::map<SolverKind, std::map<ParamId, double>> overrides;
  /// Cells run concurrently on this many threads.
  std::size_t workers = 1;
  /// Threading inside a portfolio cell (0 threads, 1 sequential).
  std::size_t portfolio_workers = 0;
  /// RPD (percent) under which a run counts as solved in the profile.
  double tolerance = 0.0;

  void validate() const;
};

/// Plain "key = value" text; '#' starts a comment; lists are comma separated.
ExperimentConfig read_config(std::istream& in);
ExperimentConfig load_config(const std::string& path);

struct ResultRow {
  std::string instance;
  std::string method;
  std::size_t run = 0;
  std::uint64_t seed = 0;
  double objective = kInfinity;
  double time_to_best = 0.0;
  std::uint64_t evaluations = 0;
  /// "ok" or "failed: reason".
  std::string status = "ok";

  bool ok() const { return status == "ok"; }
};

/// Stable per-cell seed; independent of the other cells in the experiment.
std::uint64_t cell_seed(std::uint64_t master, const std::string& instance, const std::string& method,
                        std::size_t run);

/// Instance label used in result files: the file name without directories.
std::string instance_name(const std::string& path);

void write_results_csv(std::ostream& out, const std::vector<ResultRow>& rows);
std::vector<ResultRow> read_results_csv(std::istream& in);

/// "instance value" per line.
std::map<std::string, double> read_bks(std::istream& in);
std::map<std::string, double> load_bks(const std::string& path);

struct SummaryRow {
  std::string instance;
  std::string method;
  std::size_t runs = 0;
  double best = kInfinity;
  /// NaN when the instance has no positive reference value.
  double rpd_best = 0.0;
  double rpd_avg = 0.0;
  double mean_time_to_best = 0.0;
  bool reaches_bks = false;
};

/// Reference per instance: the supplied BKS when present, otherwise the best
/// objective over all successful rows.
std::map<std::string, double> reference_values(const std::vector<ResultRow>& rows,
                                               const std::map<std::string, double>& bks);

/// Deviation used for profiles and tests: RPD against a positive reference,
/// otherwise 0 when the reference is matched and infinity when it is not.
double gap(double value, double reference);

bool matches(double value, double reference);

std::vector<SummaryRow> summarize(const std::vector<ResultRow>& rows, const std::map<std::string, double>& bks);
void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& summary);
/// Per method: mean RPDs, mean time and the number of instances whose best run matched the BKS.
void write_method_summary_csv(std::ostream& out, const std::vector<SummaryRow>& summary);

PerformanceProfile profile_from_results(const std::vector<ResultRow>& rows,
                                        const std::map<std::string, double>& bks, double tolerance);

/// p-values of "row better than column" over the per-(instance, run) gaps;
/// empty cells when fewer than five pairs exist.
void write_wilcoxon_csv(std::ostream& out, const std::vector<ResultRow>& rows,
                        const std::map<std::string, double>& bks);

struct ExperimentReport {
  std::vector<ResultRow> rows;
  std::size_t failed = 0;
};

/// Runs every (instance, method, run) cell and writes results.csv,
/// summary.csv, methods.csv, profile.csv and wilcoxon.csv into `output`.
ExperimentReport run_experiment(const ExperimentConfig& config);

/// Parameters of `kind` for the config: table row plus overrides.
SolverParams configured_params(const ExperimentConfig& config, SolverKind kind);

}  // namespace rko::harness

#endif  // RKO_HARNESS_EXPERIMENT_HPP_
