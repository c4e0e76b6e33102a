#include "rko/local_search.hpp"

#include <algorithm>
#include <cmath>

namespace rko {

std::string_view to_string(Neighborhood n) {
  switch (n) {
    case Neighborhood::Swap: return "swap";
    case Neighborhood::Farey: return "farey";
    case Neighborhood::Mirror: return "mirror";
    case Neighborhood::NelderMead: return "nelder-mead";
  }
  return "?";
}

std::size_t nelder_mead_iterations(std::size_t n) {
  const double budget = static_cast<double>(n) * std::exp(-2.0);
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(budget)));
}

Solution swap_ls(const Solution& start, SearchContext& ctx) {
  Solution best = start;
  const std::size_t n = best.keys.size();
  if (n < 2) return best;
  const auto order = random_order(n, ctx.rng());
  KeyVector& x = best.keys;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (ctx.stopped()) return best;
      const std::size_t a = order[i];
      const std::size_t b = order[j];
      std::swap(x[a], x[b]);
      Fitness f = ctx.evaluate(x);
      if (f.objective < best.fitness.objective) {
        best.fitness = f;
      } else {
        std::swap(x[a], x[b]);
      }
    }
  }
  return best;
}

Solution farey_ls(const Solution& start, SearchContext& ctx) {
  Solution best = start;
  const std::size_t n = best.keys.size();
  const auto order = random_order(n, ctx.rng());
  KeyVector& x = best.keys;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t k = order[i];
    for (std::size_t j = 0; j + 1 < kFarey.size(); ++j) {
      if (ctx.stopped()) return best;
      const double previous = x[k];
      x[k] = clamp_key(ctx.rng().uniform_open(kFarey[j], kFarey[j + 1]));
      Fitness f = ctx.evaluate(x);
      if (f.objective < best.fitness.objective) {
        best.fitness = f;
      } else {
        x[k] = previous;
      }
    }
  }
  return best;
}

Solution mirror_ls(const Solution& start, SearchContext& ctx) {
  Solution best = start;
  const std::size_t n = best.keys.size();
  const auto order = random_order(n, ctx.rng());
  KeyVector& x = best.keys;
  for (std::size_t i = 0; i < n; ++i) {
    if (ctx.stopped()) return best;
    const std::size_t k = order[i];
    const double previous = x[k];
    x[k] = mirror_key(previous);
    Fitness f = ctx.evaluate(x);
    if (f.objective < best.fitness.objective) {
      best.fitness = f;
    } else {
      x[k] = previous;
    }
  }
  return best;
}

namespace {

void sort_simplex(std::array<Solution, 3>& simplex) {
  std::stable_sort(simplex.begin(), simplex.end(), [](const Solution& a, const Solution& b) {
    return a.fitness.objective < b.fitness.objective;
  });
}

}  // namespace

Solution nelder_mead_ls(const Solution& x1, const Solution& x2, const Solution& x3,
                        SearchContext& ctx, const BlendParams& blend_params) {
  if (x1.keys.size() != x2.keys.size() || x1.keys.size() != x3.keys.size()) {
    throw DimensionError("Nelder-Mead vertices differ in length");
  }
  auto& rng = ctx.rng();
  BlendParams direct = blend_params;
  direct.factor = 1;
  BlendParams inverse = blend_params;
  inverse.factor = -1;

  auto make = [&](const KeyVector& a, const KeyVector& b, const BlendParams& p) {
    Solution s;
    s.keys = blend(a, b, p, rng);
    s.fitness = ctx.evaluate(s.keys);
    return s;
  };

  std::array<Solution, 3> simplex{x1, x2, x3};
  sort_simplex(simplex);
  if (ctx.stopped()) return simplex[0];
  Solution centroid = make(simplex[0].keys, simplex[1].keys, direct);

  const std::size_t max_iter = nelder_mead_iterations(x1.keys.size());
  for (std::size_t iter = 0; iter < max_iter && !ctx.stopped(); ++iter) {
    bool shrink = false;
    Solution reflection = make(centroid.keys, simplex[2].keys, inverse);
    const double fr = reflection.fitness.objective;
    if (fr < simplex[0].fitness.objective) {
      Solution expansion = make(reflection.keys, centroid.keys, inverse);
      simplex[2] = expansion.fitness.objective < fr ? std::move(expansion) : std::move(reflection);
    } else if (fr < simplex[1].fitness.objective) {
      simplex[2] = std::move(reflection);
    } else if (fr < simplex[2].fitness.objective) {
      Solution contraction = make(reflection.keys, centroid.keys, direct);
      if (contraction.fitness.objective < fr) {
        simplex[2] = std::move(contraction);
      } else {
        shrink = true;
      }
    } else {
      Solution contraction = make(centroid.keys, simplex[2].keys, direct);
      if (contraction.fitness.objective < simplex[2].fitness.objective) {
        simplex[2] = std::move(contraction);
      } else {
        shrink = true;
      }
    }
    if (shrink) {
      for (std::size_t v = 1; v < 3 && !ctx.stopped(); ++v) {
        simplex[v] = make(simplex[0].keys, simplex[v].keys, direct);
      }
    }
    sort_simplex(simplex);
    if (ctx.stopped()) break;
    centroid = make(simplex[0].keys, simplex[1].keys, direct);
  }
  // The centroid is evaluated but is not a simplex vertex; the best vertex is
  // returned, which is never worse than the best of the three inputs.
  return simplex[0];
}

std::vector<Neighborhood> neighborhood_list(const SearchContext& ctx) {
  std::vector<Neighborhood> list{Neighborhood::Swap, Neighborhood::Farey, Neighborhood::Mirror};
  if (ctx.pool() != nullptr && ctx.pool()->size() >= 2) list.push_back(Neighborhood::NelderMead);
  return list;
}

Solution apply_neighborhood(Neighborhood n, const Solution& start, SearchContext& ctx) {
  switch (n) {
    case Neighborhood::Swap: return swap_ls(start, ctx);
    case Neighborhood::Farey: return farey_ls(start, ctx);
    case Neighborhood::Mirror: return mirror_ls(start, ctx);
    case Neighborhood::NelderMead: {
      Solution a = ctx.pool()->sample(ctx.rng());
      Solution b = ctx.pool()->sample(ctx.rng());
      return nelder_mead_ls(start, a, b, ctx);
    }
  }
  return start;
}

Solution rvnd(const Solution& start, SearchContext& ctx) {
  Solution current = start;
  const auto full = neighborhood_list(ctx);
  auto list = full;
  while (!list.empty() && !ctx.poll_clock()) {
    const std::size_t pick = ctx.rng().index(list.size());
    Solution candidate = apply_neighborhood(list[pick], current, ctx);
    if (candidate.fitness.objective < current.fitness.objective) {
      current = std::move(candidate);
      list = full;
    } else {
      list.erase(list.begin() + static_cast<std::ptrdiff_t>(pick));
    }
  }
  return current;
}

}  // namespace rko
