#ifndef RKO_SEARCH_CONTEXT_HPP_
#define RKO_SEARCH_CONTEXT_HPP_

#include <atomic>
#include <cstdint>
#include <string>
#include <vector>

#include "rko/core.hpp"
#include "rko/elite_pool.hpp"

namespace rko {

struct TraceEntry {
  double seconds = 0.0;
  std::uint64_t evaluations = 0;
  double objective = 0.0;
};

/// Per-solver search state: owns the random stream and evaluation tally,
/// tracks the best solution seen through `evaluate`, offers every strict
/// improvement to the shared pool and answers "should I stop?".
///
/// The wall clock is polled every 64 evaluations and whenever `poll_clock`
/// is called; evaluation budget and target objective are checked on every
/// evaluation. A shared cancel flag lets one solver that reaches the target
/// stop the whole portfolio.
class SearchContext {
 public:
  static constexpr std::uint64_t kClockPollInterval = 64;

  SearchContext(const Decoder& decoder, ElitePool* pool, RngStream rng,
                StopCriterion stop, Clock::time_point start,
                std::atomic<bool>* cancel = nullptr, std::string name = {});

  SearchContext(const SearchContext&) = delete;
  SearchContext& operator=(const SearchContext&) = delete;

  Fitness evaluate(const KeyVector& keys);

  bool stopped() const {
    return stopped_ || (cancel_ != nullptr && cancel_->load(std::memory_order_relaxed));
  }
  /// Re-reads the clock; returns stopped().
  bool poll_clock();

  /// Fraction of the budget consumed, in [0,1]. Evaluation-based when an
  /// evaluation budget is set, time-based otherwise.
  double progress() const;
  double elapsed() const { return seconds_since(start_); }

  const Decoder& decoder() const { return decoder_; }
  std::size_t dimension() const { return decoder_.dimension(); }
  ElitePool* pool() const { return pool_; }
  RngStream& rng() { return rng_; }
  const StopCriterion& stop() const { return stop_; }
  Clock::time_point start() const { return start_; }
  const std::string& name() const { return name_; }

  std::uint64_t evaluations() const { return counter_.count(); }
  bool has_best() const { return has_best_; }
  const Solution& best() const { return best_; }
  double time_to_best() const { return time_to_best_; }
  std::uint64_t evaluations_to_best() const { return evals_to_best_; }
  const std::vector<TraceEntry>& trace() const { return trace_; }

  /// When false, improvements are tracked but not offered to the pool.
  void set_offer_to_pool(bool on) { offer_to_pool_ = on; }

 private:
  void update_stop_flags(double objective);

  const Decoder& decoder_;
  ElitePool* pool_;
  RngStream rng_;
  StopCriterion stop_;
  Clock::time_point start_;
  std::atomic<bool>* cancel_;
  std::string name_;

  EvaluationCounter counter_;
  bool stopped_ = false;
  bool offer_to_pool_ = true;
  bool has_best_ = false;
  Solution best_;
  double time_to_best_ = 0.0;
  std::uint64_t evals_to_best_ = 0;
  std::vector<TraceEntry> trace_;
};

}  // namespace rko

#endif  // RKO_SEARCH_CONTEXT_HPP_
