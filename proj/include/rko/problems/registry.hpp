#ifndef RKO_PROBLEMS_REGISTRY_HPP_
#define RKO_PROBLEMS_REGISTRY_HPP_

#include <functional>
#include <memory>
#include <string>

#include "rko/core.hpp"
#include "rko/params.hpp"
#include "rko/problems/common.hpp"

namespace rko::problems {

struct LoadOptions {
  /// Neighbor count for p-median files, which do not carry it.
  std::size_t alpha = 2;
};

struct LoadedProblem {
  ProblemKind kind;
  std::shared_ptr<const Decoder> decoder;
  /// Vertex, station or node count; drives the automatic time limit.
  std::size_t size = 0;
  std::function<Optimum()> brute_force;
};

LoadedProblem load_problem(ProblemKind kind, const std::string& path, const LoadOptions& options = {});

/// Seconds allotted per run when no explicit limit is given: 0.1 n for
/// p-median, one per station or node otherwise.
double default_time_limit(ProblemKind kind, std::size_t size);

}  // namespace rko::problems

#endif  // RKO_PROBLEMS_REGISTRY_HPP_
