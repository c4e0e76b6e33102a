#include "rko/variation.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace rko {

void ShakeParams::validate() const {
  if (!(0.0 <= beta_min && beta_min <= beta_max && beta_max <= 1.0)) {
    throw std::invalid_argument("shake rates must satisfy 0 <= beta_min <= beta_max <= 1");
  }
}

void BlendParams::validate() const {
  if (!(rho >= 0.0 && rho <= 1.0) || !(mu >= 0.0 && mu <= 1.0)) {
    throw std::invalid_argument("blend probabilities must lie in [0,1]");
  }
  if (factor != 1 && factor != -1) throw std::invalid_argument("blend factor must be +1 or -1");
}

std::size_t shake_move_count(double beta, std::size_t n) {
  if (beta <= 0.0 || n == 0) return 0;
  // The small slack keeps products such as 0.3*10 from rounding up to 4.
  auto moves = static_cast<std::size_t>(std::ceil(beta * static_cast<double>(n) - 1e-9));
  return moves == 0 ? 1 : moves;
}

void apply_shake_move(KeyVector& keys, ShakeMove move, RngStream& rng) {
  const std::size_t n = keys.size();
  if (n == 0) return;
  const std::size_t i = rng.index(n);
  switch (move) {
    case ShakeMove::Random:
      keys[i] = rng.uniform();
      break;
    case ShakeMove::Mirror:
      keys[i] = mirror_key(keys[i]);
      break;
    case ShakeMove::Swap: {
      if (n < 2) break;
      std::size_t j = rng.index(n - 1);
      if (j >= i) ++j;
      std::swap(keys[i], keys[j]);
      break;
    }
    case ShakeMove::SwapNeighbor:
      std::swap(keys[i], keys[(i + 1) % n]);
      break;
  }
}

KeyVector shake(const KeyVector& keys, const ShakeParams& params, RngStream& rng,
                std::size_t* moves_applied) {
  params.validate();
  KeyVector out = keys;
  const double beta =
      params.beta_min == params.beta_max ? params.beta_min : rng.uniform(params.beta_min, params.beta_max);
  const std::size_t moves = shake_move_count(beta, out.size());
  for (std::size_t k = 0; k < moves; ++k) {
    apply_shake_move(out, static_cast<ShakeMove>(rng.index(4)), rng);
  }
  if (moves_applied != nullptr) *moves_applied = moves;
  return out;
}

KeyVector blend(const KeyVector& a, const KeyVector& b, const BlendParams& params,
                RngStream& rng) {
  if (a.size() != b.size()) throw DimensionError("blend parents differ in length");
  params.validate();
  KeyVector child(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (rng.uniform() < params.mu) {
      child[i] = rng.uniform();
    } else if (rng.uniform() < params.rho) {
      child[i] = a[i];
    } else {
      child[i] = params.factor == 1 ? b[i] : mirror_key(b[i]);
    }
  }
  return child;
}

}  // namespace rko
