#ifndef RKO_TESTS_SUPPORT_HPP_
#define RKO_TESTS_SUPPORT_HPP_

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "rko/core.hpp"
#include "rko/problems/ncgpp.hpp"
#include "rko/problems/pmedian.hpp"
#include "rko/problems/set_cover.hpp"
#include "rko/problems/thlp.hpp"
#include "rko/problems/tsp.hpp"

namespace rko::testing {

using namespace rko::problems;

TspInstance random_tsp(RngStream& rng, std::size_t n);
SetCoverInstance random_set_cover(RngStream& rng, std::size_t rows, std::size_t cols);
/// Integer distances in [1, 100], symmetric, no triangle inequality.
PMedianInstance random_pmedian(RngStream& rng, std::size_t n, std::size_t p, std::size_t alpha);
/// Capacities leave room for at least one feasible assignment.
NcgppInstance random_ncgpp(RngStream& rng, std::size_t stations, std::size_t controllers);
ThlpInstance random_thlp(RngStream& rng, std::size_t n, std::size_t hubs);

/// Six stations, two controllers of capacity 3, unit traffic.
NcgppInstance worked_example_ncgpp();

struct NamedDecoder {
  std::string name;
  std::shared_ptr<const Decoder> decoder;
};

/// One small instance of every shipped decoder.
std::vector<NamedDecoder> small_decoders(RngStream& rng);

// Oracles written independently of the library code paths.

double oracle_tour_cost(const TspInstance& inst, const std::vector<std::size_t>& tour);
/// Sum for each vertex of its alpha nearest open facilities, by full sort.
double oracle_pmedian_cost(const PMedianInstance& inst, const std::vector<std::size_t>& open);
double oracle_cut(const NcgppInstance& inst, const std::vector<int>& controller);
/// Route costs from Floyd-Warshall over the tree restricted to hubs.
double oracle_thlp_cost(const ThlpInstance& inst, const HubNetwork& net);
/// Smallest cover size by enumeration, or -1 when some row is uncoverable.
int oracle_min_cover(const SetCoverInstance& inst);

/// Writes text to a fresh file under the system temp directory.
std::string write_temp(const std::string& name, const std::string& text);

}  // namespace rko::testing

#endif  // RKO_TESTS_SUPPORT_HPP_
