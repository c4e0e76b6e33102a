#include "rko/search_context.hpp"

#include <algorithm>

namespace rko {

SearchContext::SearchContext(const Decoder& decoder, ElitePool* pool, RngStream rng,
                             StopCriterion stop, Clock::time_point start,
                             std::atomic<bool>* cancel, std::string name)
    : decoder_(decoder),
      pool_(pool),
      rng_(rng),
      stop_(stop),
      start_(start),
      cancel_(cancel),
      name_(std::move(name)) {
  stop_.validate();
}

Fitness SearchContext::evaluate(const KeyVector& keys) {
  Fitness fit = rko::evaluate(decoder_, keys, counter_);
  if (!has_best_ || fit.objective < best_.fitness.objective) {
    has_best_ = true;
    best_.keys = keys;
    best_.fitness = fit;
    time_to_best_ = elapsed();
    evals_to_best_ = counter_.count();
    trace_.push_back({time_to_best_, evals_to_best_, fit.objective});
    if (pool_ != nullptr && offer_to_pool_) pool_->offer(keys, fit);
  }
  update_stop_flags(best_.fitness.objective);
  return fit;
}

void SearchContext::update_stop_flags(double objective) {
  if (stop_.max_evaluations > 0 && counter_.count() >= stop_.max_evaluations) {
    stopped_ = true;
  }
  if (stop_.target && objective <= *stop_.target) {
    stopped_ = true;
    if (cancel_ != nullptr) cancel_->store(true, std::memory_order_relaxed);
  }
  if (counter_.count() % kClockPollInterval == 0) poll_clock();
}

bool SearchContext::poll_clock() {
  if (!stopped_ && elapsed() >= stop_.time_limit) stopped_ = true;
  return stopped();
}

double SearchContext::progress() const {
  double p;
  if (stop_.max_evaluations > 0) {
    p = static_cast<double>(counter_.count()) / static_cast<double>(stop_.max_evaluations);
  } else {
    p = elapsed() / stop_.time_limit;
  }
  return std::clamp(p, 0.0, 1.0);
}

}  // namespace rko
