#include "rko/elite_pool.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>

#include "rko/local_search.hpp"
#include "rko/search_context.hpp"
#include "rko/variation.hpp"

namespace rko {

ElitePool::ElitePool(std::size_t capacity, double clone_tolerance)
    : capacity_(capacity), clone_tolerance_(clone_tolerance) {
  if (capacity == 0) throw std::invalid_argument("pool capacity must be >= 1");
  if (!(clone_tolerance >= 0.0)) throw std::invalid_argument("clone tolerance must be >= 0");
  entries_.reserve(capacity + 1);
}

bool ElitePool::clones(double a, double b, double tolerance) {
  if (a == b) return true;
  return std::fabs(a - b) <= tolerance * std::max(std::fabs(a), std::fabs(b));
}

bool ElitePool::is_clone_locked(double objective) const {
  // Entries are sorted, so only the neighbours of the insertion point can
  // be within tolerance.
  auto it = std::lower_bound(entries_.begin(), entries_.end(), objective,
                             [](const Solution& s, double v) { return s.fitness.objective < v; });
  if (it != entries_.end() && clones(it->fitness.objective, objective, clone_tolerance_)) return true;
  if (it != entries_.begin() &&
      clones(std::prev(it)->fitness.objective, objective, clone_tolerance_)) {
    return true;
  }
  return false;
}

bool ElitePool::is_clone(double objective) const {
  std::lock_guard lock(mutex_);
  return is_clone_locked(objective);
}

bool ElitePool::offer(const KeyVector& keys, const Fitness& fitness) {
  std::lock_guard lock(mutex_);
  if (is_clone_locked(fitness.objective)) return false;
  if (entries_.size() >= capacity_ && fitness.objective >= entries_.back().fitness.objective) {
    return false;
  }
  auto it = std::upper_bound(entries_.begin(), entries_.end(), fitness.objective,
                             [](double v, const Solution& s) { return v < s.fitness.objective; });
  entries_.insert(it, Solution{keys, fitness});
  if (entries_.size() > capacity_) entries_.pop_back();
  return true;
}

Solution ElitePool::sample(RngStream& rng) const {
  std::lock_guard lock(mutex_);
  if (entries_.empty()) throw EmptyPoolError("cannot sample from an empty elite pool");
  return entries_[rng.index(entries_.size())];
}

std::size_t ElitePool::size() const {
  std::lock_guard lock(mutex_);
  return entries_.size();
}

std::optional<Solution> ElitePool::best() const {
  std::lock_guard lock(mutex_);
  if (entries_.empty()) return std::nullopt;
  return entries_.front();
}

std::vector<Solution> ElitePool::snapshot() const {
  std::lock_guard lock(mutex_);
  return entries_;
}

void ElitePool::dump(const std::string& path) const {
  auto entries = snapshot();
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open pool dump file " + path);
  out << std::setprecision(17);
  for (const auto& e : entries) {
    out << e.fitness.objective;
    for (double k : e.keys) out << ' ' << k;
    out << '\n';
  }
}

void init_pool(ElitePool& pool, SearchContext& ctx) {
  constexpr int kShakeAttempts = 50;
  const ShakeParams declone{0.1, 0.3};

  ctx.set_offer_to_pool(false);
  for (std::size_t e = 0; e < pool.capacity(); ++e) {
    if (e > 0 && ctx.stopped()) break;
    KeyVector keys = random_vector(ctx.dimension(), ctx.rng());
    Solution s{keys, ctx.evaluate(keys)};
    s = farey_ls(s, ctx);

    int attempts = 0;
    while (pool.is_clone(s.fitness.objective) && attempts < kShakeAttempts && !ctx.stopped()) {
      s.keys = shake(s.keys, declone, ctx.rng());
      s.fitness = ctx.evaluate(s.keys);
      ++attempts;
    }
    if (pool.is_clone(s.fitness.objective)) {
      s.keys = random_vector(ctx.dimension(), ctx.rng());
      s.fitness = ctx.evaluate(s.keys);
    }
    pool.offer(s.keys, s.fitness);
  }
  ctx.set_offer_to_pool(true);
}

}  // namespace rko
