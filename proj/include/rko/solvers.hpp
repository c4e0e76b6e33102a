#ifndef RKO_SOLVERS_HPP_
#define RKO_SOLVERS_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "rko/core.hpp"
#include "rko/elite_pool.hpp"
#include "rko/param_control.hpp"
#include "rko/params.hpp"
#include "rko/search_context.hpp"

namespace rko {

struct RunResult {
  std::string solver;
  KeyVector best_keys;
  Fitness best;
  double time_to_best = 0.0;
  std::uint64_t evaluations = 0;
  std::uint64_t evaluations_to_best = 0;
  std::vector<TraceEntry> trace;
};

RunResult make_result(const SearchContext& ctx);

// Single-solver drivers. Each runs until the context stops and returns the
// best solution the context saw. When `controller` is non-null it is asked
// for a configuration at the top of every iteration (one generation for
// population methods, one outer loop otherwise).
RunResult run_brkga(SearchContext& ctx, const SolverParams& params, QController* controller = nullptr);
RunResult run_ga(SearchContext& ctx, const SolverParams& params, QController* controller = nullptr);
RunResult run_sa(SearchContext& ctx, const SolverParams& params, QController* controller = nullptr);
RunResult run_grasp(SearchContext& ctx, const SolverParams& params, QController* controller = nullptr);
RunResult run_ils(SearchContext& ctx, const SolverParams& params, QController* controller = nullptr);
RunResult run_vns(SearchContext& ctx, const SolverParams& params, QController* controller = nullptr);
RunResult run_pso(SearchContext& ctx, const SolverParams& params, QController* controller = nullptr);
RunResult run_lns(SearchContext& ctx, const SolverParams& params, QController* controller = nullptr);

RunResult run_solver(SolverKind kind, SearchContext& ctx, const SolverParams& params,
                     QController* controller = nullptr);

// Building blocks exposed for testing.

/// Metropolis criterion: always accepts delta <= 0, otherwise accepts with
/// probability exp(-delta / temperature).
bool metropolis_accept(double delta, double temperature, RngStream& rng);

inline constexpr double kReheatThreshold = 1e-4;

struct BrkgaPartition {
  std::size_t elite;
  std::size_t mutants;
  std::size_t offspring;
};

/// Elite and mutant counts rounded half up; offspring take the remainder.
BrkgaPartition brkga_partition(std::size_t population, double elite_fraction,
                               double mutant_fraction);

/// Velocity and position update of one particle; positions are clamped
/// into [0,1).
void pso_move(KeyVector& position, std::vector<double>& velocity, const KeyVector& personal_best,
              const KeyVector& global_best, const SolverParams& params, RngStream& rng);

/// Removes ceil(beta*n) random keys (beta uniform in [beta_min, beta_max])
/// and re-inserts each, in random order, at the best of one draw per Farey
/// interval.
Solution lns_destroy_repair(const Solution& start, double beta_min, double beta_max,
                            SearchContext& ctx);

/// Semi-greedy construction: repeatedly line-searches every unfixed key on
/// a grid of spacing h, builds the restricted candidate list with a random
/// threshold gamma, and fixes one member at its line-search value.
Solution grasp_construct(const Solution& start, double grid_spacing, SearchContext& ctx);

struct PortfolioConfig {
  std::vector<SolverKind> solvers{kAllSolvers.begin(), kAllSolvers.end()};
  /// Parallel to `solvers`.
  std::vector<SolverParams> params;
  bool q_learning = false;
  std::uint64_t seed = 1;
  StopCriterion stop;
  std::size_t pool_capacity = ElitePool::kDefaultCapacity;
  /// 0 runs every solver on its own thread; 1 runs them one after another,
  /// each with an equal share of the time budget (deterministic).
  std::size_t workers = 0;
  /// Optional CSV of improvements: solver,seconds,objective.
  std::string trace_path;
  /// Optional elite-pool dump written after the run.
  std::string pool_dump_path;
  /// Optional directory receiving one Q-table CSV per solver.
  std::string qtable_dir;
};

struct PortfolioResult {
  RunResult best;
  RunResult pool_init;
  std::vector<RunResult> per_solver;
  std::vector<Solution> final_pool;
};

/// Default configuration for `problem`: all solvers with their table rows.
PortfolioConfig default_portfolio(ProblemKind problem, std::vector<SolverKind> solvers = {
                                      kAllSolvers.begin(), kAllSolvers.end()});

/// Initializes a shared elite pool (stream 0 of the seed) and runs every
/// enabled solver on its own stream (1 + position in kAllSolvers).
PortfolioResult run_portfolio(const Decoder& decoder, const PortfolioConfig& config);

}  // namespace rko

#endif  // RKO_SOLVERS_HPP_
