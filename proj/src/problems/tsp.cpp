#include "rko/problems/tsp.hpp"

#include <algorithm>
#include <iomanip>
#include <numeric>
#include <ostream>

namespace rko::problems {

void TspInstance::validate() const {
  if (n == 0) throw std::invalid_argument("TSP instance needs at least one city");
  if (dist.size() != n * n) throw std::invalid_argument("TSP distance matrix is not n x n");
  for (std::size_t i = 0; i < n; ++i) {
    if (at(i, i) != 0.0) throw std::invalid_argument("TSP distance diagonal must be zero");
    for (std::size_t j = 0; j < n; ++j) {
      if (at(i, j) < 0.0) throw std::invalid_argument("TSP distances must be non-negative");
      if (at(i, j) != at(j, i)) throw std::invalid_argument("TSP distances must be symmetric");
    }
  }
}

std::vector<std::size_t> sorted_order(std::span<const double> keys) {
  std::vector<std::size_t> order(keys.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return keys[a] < keys[b]; });
  return order;
}

std::vector<std::size_t> decode_tour(std::span<const double> keys) { return sorted_order(keys); }

double tour_cost(const TspInstance& inst, const std::vector<std::size_t>& tour) {
  if (tour.empty()) return 0.0;
  double cost = 0.0;
  for (std::size_t i = 0; i + 1 < tour.size(); ++i) cost += inst.at(tour[i], tour[i + 1]);
  return cost + inst.at(tour.back(), tour.front());
}

TspDecoder::TspDecoder(TspInstance inst) : inst_(std::move(inst)) { inst_.validate(); }

Fitness TspDecoder::decode(std::span<const double> keys) const {
  return Fitness::of(tour_cost(inst_, decode_tour(keys)));
}

std::string TspDecoder::describe(std::span<const double> keys) const {
  return "tour " + one_based(decode_tour(keys));
}

TspInstance read_tsp(std::istream& in) {
  TokenReader r(in);
  TspInstance inst;
  inst.n = r.next_count("city count");
  if (inst.n == 0) throw ParseError("city count must be positive", 1);
  inst.dist.resize(inst.n * inst.n);
  for (auto& d : inst.dist) d = r.next_nonnegative("distance");
  r.expect_end();
  try {
    inst.validate();
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what(), r.line());
  }
  return inst;
}

TspInstance parse_tsp(const std::string& path) {
  auto in = open_input(path);
  return read_tsp(in);
}

void write_tsp(std::ostream& out, const TspInstance& inst) {
  out << inst.n << '\n' << std::setprecision(17);
  for (std::size_t i = 0; i < inst.n; ++i) {
    for (std::size_t j = 0; j < inst.n; ++j) out << (j ? " " : "") << inst.at(i, j);
    out << '\n';
  }
}

Optimum brute_force(const TspInstance& inst) {
  double states = 1.0;
  for (std::size_t k = 2; k < inst.n; ++k) states *= static_cast<double>(k);
  check_enumeration_size(states, "TSP");
  std::vector<std::size_t> tour(inst.n);
  std::iota(tour.begin(), tour.end(), std::size_t{0});
  Optimum best{tour_cost(inst, tour), ""};
  std::vector<std::size_t> best_tour = tour;
  if (inst.n > 2) {
    while (std::next_permutation(tour.begin() + 1, tour.end())) {
      const double c = tour_cost(inst, tour);
      if (c < best.objective) {
        best.objective = c;
        best_tour = tour;
      }
    }
  }
  best.certificate = "tour " + one_based(best_tour);
  return best;
}

}  // namespace rko::problems
