#ifndef RKO_PROBLEMS_TSP_HPP_
#define RKO_PROBLEMS_TSP_HPP_

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "rko/core.hpp"
#include "rko/problems/common.hpp"

namespace rko::problems {

struct TspInstance {
  std::size_t n = 0;
  /// Row-major n x n symmetric distances with zero diagonal.
  std::vector<double> dist;

  double at(std::size_t i, std::size_t j) const { return dist[i * n + j]; }
  void validate() const;
};

/// Indices of the keys in ascending (stable) order.
std::vector<std::size_t> sorted_order(std::span<const double> keys);

std::vector<std::size_t> decode_tour(std::span<const double> keys);
double tour_cost(const TspInstance& inst, const std::vector<std::size_t>& tour);

class TspDecoder : public Decoder {
 public:
  explicit TspDecoder(TspInstance inst);
  std::size_t dimension() const override { return inst_.n; }
  Fitness decode(std::span<const double> keys) const override;
  std::string describe(std::span<const double> keys) const override;
  const TspInstance& instance() const { return inst_; }

 private:
  TspInstance inst_;
};

TspInstance read_tsp(std::istream& in);
TspInstance parse_tsp(const std::string& path);
void write_tsp(std::ostream& out, const TspInstance& inst);

/// Exhaustive search over (n-1)! tours with city 1 fixed first.
Optimum brute_force(const TspInstance& inst);

}  // namespace rko::problems

#endif  // RKO_PROBLEMS_TSP_HPP_
