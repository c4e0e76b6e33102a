#ifndef RKO_LOCAL_SEARCH_HPP_
#define RKO_LOCAL_SEARCH_HPP_

// Problem-independent descent heuristics over random-key vectors and the
// randomized variable neighborhood descent (RVND) that coordinates them.
// Every function here is a descent method: the returned objective is never
// worse than the incumbent it was given. All of them return early with the
// incumbent once the search context reports a stop.

#include <array>
#include <cstddef>
#include <string_view>
#include <vector>

#include "rko/elite_pool.hpp"
#include "rko/search_context.hpp"
#include "rko/variation.hpp"

namespace rko {

struct Fraction {
  int num;
  int den;
  constexpr double value() const { return static_cast<double>(num) / den; }
};

/// Farey sequence of order 7: 19 terms, 18 sampling intervals.
inline constexpr std::array<Fraction, 19> kFareyFractions{{
    {0, 1}, {1, 7}, {1, 6}, {1, 5}, {1, 4}, {2, 7}, {1, 3}, {2, 5}, {3, 7}, {1, 2},
    {4, 7}, {3, 5}, {2, 3}, {5, 7}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {1, 1},
}};

inline constexpr std::array<double, 19> kFarey = [] {
  std::array<double, 19> v{};
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = kFareyFractions[i].value();
  return v;
}();

enum class Neighborhood { Swap, Farey, Mirror, NelderMead };

std::string_view to_string(Neighborhood n);

/// Nelder-Mead parameters; the blend used as the geometric operator.
inline constexpr BlendParams kNelderMeadBlend{0.5, 0.02, 1};

/// Iteration budget max(1, ceil(n * e^-2)).
std::size_t nelder_mead_iterations(std::size_t n);

/// First-improvement scan of all key pairs in a random index order.
Solution swap_ls(const Solution& start, SearchContext& ctx);

/// For each key (random order) tries one draw inside each Farey interval.
Solution farey_ls(const Solution& start, SearchContext& ctx);

/// For each key (random order) tries its complement.
Solution mirror_ls(const Solution& start, SearchContext& ctx);

/// Simplex search over three vertices using blending for reflection,
/// expansion, contraction and shrinking. Returns the best vertex.
Solution nelder_mead_ls(const Solution& x1, const Solution& x2, const Solution& x3,
                        SearchContext& ctx, const BlendParams& blend_params = kNelderMeadBlend);

/// Randomized VND over Swap, Farey, Mirror and (when the pool holds at least
/// two entries) Nelder-Mead with two pool partners.
Solution rvnd(const Solution& start, SearchContext& ctx);

/// Neighbourhoods rvnd would start with for the given context.
std::vector<Neighborhood> neighborhood_list(const SearchContext& ctx);

/// Runs a single neighbourhood from `start`.
Solution apply_neighborhood(Neighborhood n, const Solution& start, SearchContext& ctx);

}  // namespace rko

#endif  // RKO_LOCAL_SEARCH_HPP_
