#ifndef RKO_VARIATION_HPP_
#define RKO_VARIATION_HPP_

#include <cstddef>

#include "rko/core.hpp"

namespace rko {

struct ShakeParams {
  double beta_min = 0.0;
  double beta_max = 0.0;

  void validate() const;
};

struct BlendParams {
  double rho = 0.5;  // probability of inheriting from the first parent
  double mu = 0.0;   // probability of a fresh random key
  int factor = 1;    // +1 copies the second parent's key, -1 its complement

  void validate() const;
};

enum class ShakeMove { Random, Mirror, Swap, SwapNeighbor };

/// Number of moves applied for a shaking rate: ceil(beta*n), at least one
/// when beta > 0.
std::size_t shake_move_count(double beta, std::size_t n);

/// Mirror of a key, kept inside [0,1).
inline double mirror_key(double x) { return clamp_key(1.0 - x); }

/// Copy of `keys` perturbed by ceil(beta*n) random moves with beta drawn
/// uniformly in [beta_min, beta_max]. Moves are applied sequentially to the
/// working copy. `moves_applied`, if given, receives the move count.
KeyVector shake(const KeyVector& keys, const ShakeParams& params, RngStream& rng,
                std::size_t* moves_applied = nullptr);

/// Applies one move of the given kind at a random position, in place.
void apply_shake_move(KeyVector& keys, ShakeMove move, RngStream& rng);

/// Position-wise recombination of two parents. Throws DimensionError on a
/// length mismatch.
KeyVector blend(const KeyVector& a, const KeyVector& b, const BlendParams& params,
                RngStream& rng);

}  // namespace rko

#endif  // RKO_VARIATION_HPP_
