#ifndef RKO_PARAM_CONTROL_HPP_
#define RKO_PARAM_CONTROL_HPP_

// Online parameter control by Q-Learning. Each state of the MDP is a full
// parameter configuration drawn from a finite grid; each action replaces
// the value of exactly one parameter. Exploration follows an epsilon-greedy
// policy whose epsilon is cosine-annealed and warm-restarted every tenth of
// the run budget.

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "rko/core.hpp"
#include "rko/params.hpp"

namespace rko {

inline constexpr double kEpsilonMin = 0.1;
inline constexpr std::array<double, 10> kEpsilonMaxLadder{1.0, 0.9, 0.8, 0.7, 0.6,
                                                          0.5, 0.4, 0.3, 0.2, 0.1};
inline constexpr double kDiscountFactor = 0.8;
/// Restart period as a fraction of the run budget.
inline constexpr double kRestartPeriod = 0.1;
inline constexpr double kRewardDenominatorGuard = 1e-12;

/// Cosine-annealed exploration rate; `period_index` is 1-based.
double epsilon(double t_cur, double period, int period_index);

/// 1 on strict improvement, otherwise the (non-positive) relative change.
double reward(double previous_best, double new_best);

double learning_factor(double elapsed_fraction);

/// Cartesian product of per-parameter value lists. States are encoded in
/// mixed radix; actions are (parameter, value) slots, flattened.
class ParameterGrid {
 public:
  struct Action {
    std::size_t param;
    std::size_t value;
    friend bool operator==(const Action&, const Action&) = default;
  };

  ParameterGrid(std::vector<ParamId> params, std::vector<std::vector<double>> values);

  std::size_t parameter_count() const { return params_.size(); }
  std::size_t state_count() const { return state_count_; }
  /// Total number of (parameter, value) slots.
  std::size_t slot_count() const { return offsets_.back(); }
  const std::vector<ParamId>& params() const { return params_; }
  const std::vector<double>& values(std::size_t param) const { return values_[param]; }

  std::vector<std::size_t> decode(std::size_t state) const;
  std::size_t encode(const std::vector<std::size_t>& indices) const;

  std::size_t slot(const Action& a) const { return offsets_[a.param] + a.value; }
  Action action_of_slot(std::size_t slot) const;

  /// All single-parameter substitutions available from `state`.
  std::vector<Action> actions(std::size_t state) const;
  std::size_t transition(std::size_t state, const Action& a) const;

  /// Writes the configuration of `state` into `params` (other fields kept).
  void apply(std::size_t state, SolverParams& params) const;

 private:
  std::vector<ParamId> params_;
  std::vector<std::vector<double>> values_;
  std::vector<std::size_t> offsets_;
  std::size_t state_count_ = 1;
};

/// Grid with {0.5x, x, 1.5x} around each tuned value of `kind`, clipped to
/// the admissible range and deduplicated.
ParameterGrid make_grid(SolverKind kind, const SolverParams& center);

/// Index of the value closest to `x` in a grid value list.
std::size_t nearest_index(const std::vector<double>& values, double x);

class QTable {
 public:
  explicit QTable(const ParameterGrid& grid);

  double get(std::size_t state, const ParameterGrid::Action& a) const;
  void set(std::size_t state, const ParameterGrid::Action& a, double q);
  /// max over A(state); 0 when A(state) is empty.
  double max_q(std::size_t state) const;

  const ParameterGrid& grid() const { return *grid_; }
  /// CSV lines "state,action,q" for every valid pair.
  void dump_csv(const std::string& path) const;

 private:
  const ParameterGrid* grid_;
  std::vector<double> q_;
};

/// Epsilon-greedy choice; greedy ties are broken uniformly at random.
ParameterGrid::Action select_action(const QTable& q, std::size_t state, double eps, RngStream& rng);

/// One Bellman step; returns the updated value.
double update_q(QTable& q, std::size_t state, const ParameterGrid::Action& a, double r,
                std::size_t next_state, double lf, double df = kDiscountFactor);

/// Per-solver controller. Each `step` closes the previous transition with
/// its reward, refreshes epsilon and the learning factor, then moves to the
/// next configuration and returns it.
class QController {
 public:
  QController(ParameterGrid grid, SolverParams base, std::size_t initial_state);
  /// Starts from the grid state nearest to `base`.
  QController(SolverKind kind, const SolverParams& base);

  QController(const QController&) = delete;
  QController& operator=(const QController&) = delete;

  const SolverParams& step(double previous_best, double new_best, double progress, RngStream& rng);

  const SolverParams& configuration() const { return config_; }
  std::size_t state() const { return state_; }
  double current_epsilon() const { return epsilon_; }
  double current_learning_factor() const { return lf_; }
  int period_index() const { return period_index_; }
  const QTable& table() const { return table_; }
  const ParameterGrid& grid() const { return grid_; }

  /// Pins epsilon (tests and ablations); nullopt restores the schedule.
  void fix_epsilon(std::optional<double> eps) { fixed_epsilon_ = eps; }

 private:
  struct Pending {
    std::size_t state;
    ParameterGrid::Action action;
    std::size_t next;
  };

  void refresh_schedule(double progress);

  ParameterGrid grid_;
  QTable table_;
  SolverParams config_;
  std::size_t state_;
  std::optional<Pending> pending_;
  std::optional<double> fixed_epsilon_;
  double epsilon_ = 1.0;
  double lf_ = 1.0;
  int period_index_ = 1;
};

}  // namespace rko

#endif  // RKO_PARAM_CONTROL_HPP_
