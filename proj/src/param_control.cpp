#include "rko/param_control.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace rko {

double epsilon(double t_cur, double period, int period_index) {
  if (!(period > 0.0)) throw std::invalid_argument("epsilon period must be positive");
  if (period_index < 1 || period_index > static_cast<int>(kEpsilonMaxLadder.size())) {
    throw std::invalid_argument("epsilon period index must be in [1,10]");
  }
  const double eps_max = kEpsilonMaxLadder[static_cast<std::size_t>(period_index - 1)];
  const double t = std::clamp(t_cur, 0.0, period);
  return kEpsilonMin + 0.5 * (eps_max - kEpsilonMin) * (1.0 + std::cos(std::numbers::pi * t / period));
}

double reward(double previous_best, double new_best) {
  if (new_best < previous_best) return 1.0;
  double denom = new_best;
  if (denom == 0.0) denom += kRewardDenominatorGuard;
  return (previous_best - new_best) / denom;
}

double learning_factor(double elapsed_fraction) {
  return 1.0 - 0.9 * std::clamp(elapsed_fraction, 0.0, 1.0);
}

ParameterGrid::ParameterGrid(std::vector<ParamId> params, std::vector<std::vector<double>> values)
    : params_(std::move(params)), values_(std::move(values)) {
  if (params_.size() != values_.size()) {
    throw std::invalid_argument("parameter grid: names and value lists differ in length");
  }
  offsets_.push_back(0);
  for (const auto& v : values_) {
    if (v.empty()) throw std::invalid_argument("parameter grid: empty value list");
    state_count_ *= v.size();
    offsets_.push_back(offsets_.back() + v.size());
  }
}

std::vector<std::size_t> ParameterGrid::decode(std::size_t state) const {
  std::vector<std::size_t> idx(values_.size());
  for (std::size_t k = 0; k < values_.size(); ++k) {
    idx[k] = state % values_[k].size();
    state /= values_[k].size();
  }
  return idx;
}

std::size_t ParameterGrid::encode(const std::vector<std::size_t>& indices) const {
  std::size_t state = 0;
  for (std::size_t k = values_.size(); k-- > 0;) state = state * values_[k].size() + indices[k];
  return state;
}

ParameterGrid::Action ParameterGrid::action_of_slot(std::size_t slot) const {
  auto it = std::upper_bound(offsets_.begin(), offsets_.end(), slot);
  const auto k = static_cast<std::size_t>(std::distance(offsets_.begin(), it)) - 1;
  return {k, slot - offsets_[k]};
}

std::vector<ParameterGrid::Action> ParameterGrid::actions(std::size_t state) const {
  const auto idx = decode(state);
  std::vector<Action> out;
  for (std::size_t k = 0; k < values_.size(); ++k) {
    for (std::size_t v = 0; v < values_[k].size(); ++v) {
      if (v != idx[k]) out.push_back({k, v});
    }
  }
  return out;
}

std::size_t ParameterGrid::transition(std::size_t state, const Action& a) const {
  auto idx = decode(state);
  idx[a.param] = a.value;
  return encode(idx);
}

void ParameterGrid::apply(std::size_t state, SolverParams& params) const {
  const auto idx = decode(state);
  for (std::size_t k = 0; k < params_.size(); ++k) params.at(params_[k]) = values_[k][idx[k]];
  if (params.beta_min > params.beta_max) std::swap(params.beta_min, params.beta_max);
  if (params.grid_end > params.grid_start) std::swap(params.grid_end, params.grid_start);
}

namespace {

double clip_value(SolverKind kind, ParamId id, double x) {
  switch (id) {
    case ParamId::PopulationSize: return std::max(kind == SolverKind::PSO ? 2.0 : 4.0, std::round(x));
    case ParamId::IterationsPerTemp:
    case ParamId::KMax: return std::max(1.0, std::round(x));
    case ParamId::EliteFraction: return std::clamp(x, 0.01, 0.49);
    case ParamId::MutantFraction: return std::clamp(x, 0.0, 0.49);
    case ParamId::InheritProb: return std::clamp(x, 0.51, 1.0);
    case ParamId::CrossoverProb:
    case ParamId::MutationProb:
    case ParamId::BetaMin:
    case ParamId::BetaMax: return std::clamp(x, 0.0, 1.0);
    case ParamId::CoolingRate: return std::clamp(x, 0.01, 0.999);
    case ParamId::GridStart:
    case ParamId::GridEnd: return std::clamp(x, 1e-9, 1.0);
    case ParamId::InitialTemp: return std::max(x, 1e-9);
    case ParamId::Cognitive:
    case ParamId::Social:
    case ParamId::Inertia: return std::max(x, 0.0);
  }
  return x;
}

}  // namespace

ParameterGrid make_grid(SolverKind kind, const SolverParams& center) {
  std::vector<ParamId> ids = tuned_params(kind);
  std::vector<std::vector<double>> values;
  for (ParamId id : ids) {
    const double c = center.at(id);
    std::vector<double> v{clip_value(kind, id, 0.5 * c), clip_value(kind, id, c),
                          clip_value(kind, id, 1.5 * c)};
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    values.push_back(std::move(v));
  }
  return ParameterGrid(std::move(ids), std::move(values));
}

std::size_t nearest_index(const std::vector<double>& values, double x) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (std::fabs(values[i] - x) < std::fabs(values[best] - x)) best = i;
  }
  return best;
}

QTable::QTable(const ParameterGrid& grid)
    : grid_(&grid), q_(grid.state_count() * grid.slot_count(), 0.0) {}

double QTable::get(std::size_t state, const ParameterGrid::Action& a) const {
  return q_[state * grid_->slot_count() + grid_->slot(a)];
}

void QTable::set(std::size_t state, const ParameterGrid::Action& a, double q) {
  q_[state * grid_->slot_count() + grid_->slot(a)] = q;
}

double QTable::max_q(std::size_t state) const {
  const auto acts = grid_->actions(state);
  if (acts.empty()) return 0.0;
  double m = get(state, acts.front());
  for (const auto& a : acts) m = std::max(m, get(state, a));
  return m;
}

void QTable::dump_csv(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open Q-table dump file " + path);
  out << "state,action,q\n";
  for (std::size_t s = 0; s < grid_->state_count(); ++s) {
    const auto idx = grid_->decode(s);
    std::ostringstream state;
    for (std::size_t k = 0; k < idx.size(); ++k) {
      if (k) state << ';';
      state << to_string(grid_->params()[k]) << '=' << grid_->values(k)[idx[k]];
    }
    for (const auto& a : grid_->actions(s)) {
      out << state.str() << ',' << to_string(grid_->params()[a.param]) << '='
          << grid_->values(a.param)[a.value] << ',' << get(s, a) << '\n';
    }
  }
}

ParameterGrid::Action select_action(const QTable& q, std::size_t state, double eps, RngStream& rng) {
  const auto acts = q.grid().actions(state);
  if (acts.empty()) throw std::invalid_argument("state has no actions");
  if (rng.uniform() < eps) return acts[rng.index(acts.size())];
  double best = q.get(state, acts.front());
  for (const auto& a : acts) best = std::max(best, q.get(state, a));
  std::vector<ParameterGrid::Action> ties;
  for (const auto& a : acts) {
    if (q.get(state, a) == best) ties.push_back(a);
  }
  return ties[rng.index(ties.size())];
}

double update_q(QTable& q, std::size_t state, const ParameterGrid::Action& a, double r,
                std::size_t next_state, double lf, double df) {
  const double old = q.get(state, a);
  const double updated = old + lf * (r + df * q.max_q(next_state) - old);
  q.set(state, a, updated);
  return updated;
}

QController::QController(ParameterGrid grid, SolverParams base, std::size_t initial_state)
    : grid_(std::move(grid)), table_(grid_), config_(base), state_(initial_state) {
  if (state_ >= grid_.state_count()) throw std::invalid_argument("initial state outside the grid");
  grid_.apply(state_, config_);
}

namespace {

std::size_t nearest_state(const ParameterGrid& grid, const SolverParams& base) {
  std::vector<std::size_t> idx;
  for (std::size_t k = 0; k < grid.parameter_count(); ++k) {
    idx.push_back(nearest_index(grid.values(k), base.at(grid.params()[k])));
  }
  return grid.encode(idx);
}

}  // namespace

QController::QController(SolverKind kind, const SolverParams& base)
    : QController(make_grid(kind, base), base, 0) {
  state_ = nearest_state(grid_, base);
  grid_.apply(state_, config_);
}

void QController::refresh_schedule(double progress) {
  progress = std::clamp(progress, 0.0, 1.0);
  const int max_index = static_cast<int>(kEpsilonMaxLadder.size());
  period_index_ = std::min(max_index, static_cast<int>(std::floor(progress / kRestartPeriod + 1e-9)) + 1);
  const double t_cur = progress - (period_index_ - 1) * kRestartPeriod;
  epsilon_ = fixed_epsilon_ ? *fixed_epsilon_ : epsilon(t_cur, kRestartPeriod, period_index_);
  lf_ = learning_factor(progress);
}

const SolverParams& QController::step(double previous_best, double new_best, double progress,
                                      RngStream& rng) {
  refresh_schedule(progress);
  if (pending_) {
    update_q(table_, pending_->state, pending_->action, reward(previous_best, new_best),
             pending_->next, lf_, kDiscountFactor);
    pending_.reset();
  }
  if (grid_.actions(state_).empty()) return config_;
  const auto a = select_action(table_, state_, epsilon_, rng);
  const std::size_t next = grid_.transition(state_, a);
  pending_ = Pending{state_, a, next};
  state_ = next;
  grid_.apply(state_, config_);
  return config_;
}

}  // namespace rko
