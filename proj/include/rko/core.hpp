#ifndef RKO_CORE_HPP_
#define RKO_CORE_HPP_

// Foundational types shared by every part of the optimizer: random-key
// vectors, fitness values, the decoder plug-in interface, seeded random
// streams and the stopping criterion.

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace rko {

/// A point of the half-open unit hypercube [0,1)^n.
using KeyVector = std::vector<double>;

/// Largest admissible key; operators that would leave [0,1) are clamped here.
inline constexpr double kKeyEpsilon = 1e-12;
inline constexpr double kMaxKey = 1.0 - kKeyEpsilon;

inline double clamp_key(double x) {
  if (!(x >= 0.0)) return 0.0;  // also maps NaN to 0
  if (x > kMaxKey) return kMaxKey;
  return x;
}

inline bool valid_key(double x) { return x >= 0.0 && x < 1.0; }

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class IntervalError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Objective value returned by a decoder. `objective` already includes the
/// penalty; a solution is feasible exactly when its penalty is zero.
struct Fitness {
  double objective = std::numeric_limits<double>::infinity();
  double penalty = 0.0;

  static Fitness of(double cost, double penalty = 0.0) {
    return Fitness{cost + penalty, penalty};
  }
  bool feasible() const { return penalty == 0.0; }

  friend bool operator==(const Fitness&, const Fitness&) = default;
};

/// Problem plug-in. Implementations must be deterministic and safe for
/// concurrent calls (instance data is read-only after construction).
/// All problems minimize.
class Decoder {
 public:
  virtual ~Decoder() = default;

  virtual std::size_t dimension() const = 0;
  virtual Fitness decode(std::span<const double> keys) const = 0;

  /// Human-readable decoded solution (tour, open facilities, ...).
  virtual std::string describe(std::span<const double> keys) const {
    (void)keys;
    return {};
  }
};

/// Independent, reproducible random stream. The same (seed, stream) pair
/// always yields the same sequence; distinct stream ids get decorrelated
/// engine seeds through a splitmix64 scramble of the pair. Real draws are
/// built from raw engine bits so results do not depend on the standard
/// library's distribution implementations.
class RngStream {
 public:
  using result_type = std::uint64_t;

  RngStream(std::uint64_t seed, std::uint64_t stream);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()();

  /// Uniform in [0,1).
  double uniform();
  /// Uniform in [lo,hi); throws IntervalError unless lo < hi.
  double uniform(double lo, double hi);
  /// Uniform in the open interval (lo,hi).
  double uniform_open(double lo, double hi);
  /// Uniform index in [0,n).
  std::size_t index(std::size_t n);
  bool bernoulli(double p) { return uniform() < p; }

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t& state);

/// Stable 64-bit hash combination used to derive per-cell seeds.
std::uint64_t hash_combine(std::uint64_t h, std::uint64_t v);
std::uint64_t hash_string(std::string_view s);

KeyVector random_vector(std::size_t n, RngStream& rng);
double unif_rand(RngStream& rng, double lo, double hi);

/// Random permutation of 0..n-1.
std::vector<std::size_t> random_order(std::size_t n, RngStream& rng);

/// Thread-safe-by-ownership evaluation tally.
class EvaluationCounter {
 public:
  std::uint64_t count() const { return count_; }
  void add() { ++count_; }
  void reset() { count_ = 0; }

 private:
  std::uint64_t count_ = 0;
};

/// Central evaluation point: checks the dimension, decodes and counts.
Fitness evaluate(const Decoder& decoder, std::span<const double> keys,
                 EvaluationCounter& counter);

using Clock = std::chrono::steady_clock;

/// Wall-clock limit plus optional evaluation budget and target objective.
struct StopCriterion {
  double time_limit = 1.0;  // seconds, > 0
  std::uint64_t max_evaluations = 0;  // 0 = unlimited
  std::optional<double> target;       // stop once objective <= target

  void validate() const {
    if (!(time_limit > 0.0)) throw std::invalid_argument("time limit must be positive");
  }
};

/// Seconds elapsed since `start`.
inline double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

}  // namespace rko

#endif  // RKO_CORE_HPP_
