#ifndef RKO_PARAMS_HPP_
#define RKO_PARAMS_HPP_

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rko {

enum class SolverKind { BRKGA, SA, GRASP, ILS, VNS, PSO, GA, LNS };

inline constexpr std::array<SolverKind, 8> kAllSolvers{
    SolverKind::BRKGA, SolverKind::SA,  SolverKind::GRASP, SolverKind::ILS,
    SolverKind::VNS,   SolverKind::PSO, SolverKind::GA,    SolverKind::LNS};

std::string_view to_string(SolverKind kind);
std::optional<SolverKind> solver_from_string(std::string_view name);

/// Problem families with tuned parameter tables. Problems without a table
/// of their own (TSP, set covering) use the p-median row.
enum class ProblemKind { ANpMP, NCGPP, THLP, TSP, SetCover };

std::string_view to_string(ProblemKind kind);
std::optional<ProblemKind> problem_from_string(std::string_view name);

enum class ParamId {
  PopulationSize,
  EliteFraction,
  MutantFraction,
  InheritProb,
  CrossoverProb,
  MutationProb,
  InitialTemp,
  IterationsPerTemp,
  CoolingRate,
  BetaMin,
  BetaMax,
  KMax,
  GridStart,
  GridEnd,
  Cognitive,
  Social,
  Inertia,
};

inline constexpr std::size_t kParamCount = 17;

std::string_view to_string(ParamId id);
std::optional<ParamId> param_from_string(std::string_view name);
bool is_integer_param(ParamId id);

/// Parameter record covering all eight metaheuristics; each solver reads
/// only the fields listed by `tuned_params`. GRASP also reads the
/// temperature fields for its annealing-style acceptance.
struct SolverParams {
  double population_size = 100;
  double elite_fraction = 0.1;
  double mutant_fraction = 0.2;
  double inherit_prob = 0.7;
  double crossover_prob = 0.85;
  double mutation_prob = 0.03;
  double initial_temp = 1e4;
  double iterations_per_temp = 100;
  double cooling_rate = 0.99;
  double beta_min = 0.1;
  double beta_max = 0.2;
  double k_max = 6;
  double grid_start = 0.125;
  double grid_end = 0.00012;
  double cognitive = 2.05;
  double social = 2.05;
  double inertia = 0.73;

  double& at(ParamId id);
  double at(ParamId id) const;

  /// Throws std::invalid_argument when a field used by `kind` is invalid.
  void validate(SolverKind kind) const;
};

/// Parameters a solver reads, in table order.
std::vector<ParamId> tuned_params(SolverKind kind);

/// Offline-tuned values from the per-problem parameter tables.
SolverParams table_params(ProblemKind problem, SolverKind kind);

}  // namespace rko

#endif  // RKO_PARAMS_HPP_
