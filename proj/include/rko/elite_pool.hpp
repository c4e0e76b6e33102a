#ifndef RKO_ELITE_POOL_HPP_
#define RKO_ELITE_POOL_HPP_

#include <cstddef>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "rko/core.hpp"

namespace rko {

struct Solution {
  KeyVector keys;
  Fitness fitness;
};

class EmptyPoolError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bounded, sorted, clone-free repository of the best solutions found by any
/// solver. Two entries are clones when their objectives agree within a
/// relative tolerance. This is the only shared-mutable object of a run;
/// every member function is atomic.
class ElitePool {
 public:
  static constexpr std::size_t kDefaultCapacity = 20;
  static constexpr double kDefaultCloneTolerance = 1e-9;

  explicit ElitePool(std::size_t capacity = kDefaultCapacity,
                     double clone_tolerance = kDefaultCloneTolerance);

  ElitePool(const ElitePool&) = delete;
  ElitePool& operator=(const ElitePool&) = delete;

  /// Inserts the solution unless it is a clone or no better than the worst
  /// entry of a full pool. Returns whether it was inserted.
  bool offer(const KeyVector& keys, const Fitness& fitness);

  /// Uniformly random entry, copied out. Throws EmptyPoolError when empty.
  Solution sample(RngStream& rng) const;

  bool is_clone(double objective) const;

  std::size_t size() const;
  std::size_t capacity() const { return capacity_; }
  double clone_tolerance() const { return clone_tolerance_; }
  std::optional<Solution> best() const;
  std::vector<Solution> snapshot() const;

  /// One line per entry: objective followed by the keys.
  void dump(const std::string& path) const;

  static bool clones(double a, double b, double tolerance);

 private:
  bool is_clone_locked(double objective) const;

  std::size_t capacity_;
  double clone_tolerance_;
  mutable std::mutex mutex_;
  std::vector<Solution> entries_;
};

class SearchContext;

/// Fills the pool with up to `capacity` Farey-refined random vectors,
/// de-cloning by shaking (50 attempts with beta in [0.1, 0.3]) and then by
/// fresh random redraws. On degenerate landscapes with fewer distinct
/// objective values than the capacity the pool ends up smaller.
void init_pool(ElitePool& pool, SearchContext& ctx);

}  // namespace rko

#endif  // RKO_ELITE_POOL_HPP_
