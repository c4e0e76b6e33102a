#ifndef RKO_PROBLEMS_PMEDIAN_HPP_
#define RKO_PROBLEMS_PMEDIAN_HPP_

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "rko/core.hpp"
#include "rko/problems/common.hpp"

namespace rko::problems {

/// Distance recorded for vertex pairs with no connecting path.
inline constexpr double kUnreachable = 1e12;

/// Alpha-neighbor p-median: open p facilities, every vertex pays the sum of
/// distances to its alpha nearest open facilities.
struct PMedianInstance {
  std::size_t n = 0;
  std::size_t p = 0;
  std::size_t alpha = 1;
  /// Row-major all-pairs distances.
  std::vector<double> dist;
  /// Set when the source graph had unreachable pairs.
  bool disconnected = false;

  double at(std::size_t i, std::size_t j) const { return dist[i * n + j]; }
  void validate() const;
};

/// Opened facilities (0-based) in the order they were picked.
std::vector<std::size_t> decode_facilities(std::span<const double> keys, std::size_t n);

/// Sum over vertices of the alpha smallest distances to `open`.
double assignment_cost(const PMedianInstance& inst, const std::vector<std::size_t>& open);

class PMedianDecoder : public Decoder {
 public:
  explicit PMedianDecoder(PMedianInstance inst);
  std::size_t dimension() const override { return inst_.p; }
  Fitness decode(std::span<const double> keys) const override;
  std::string describe(std::span<const double> keys) const override;
  const PMedianInstance& instance() const { return inst_; }

 private:
  PMedianInstance inst_;
};

/// OR-Library pmed format ("n m p" header, then m "i j cost" edges). Later
/// duplicates of an edge replace earlier ones; distances are closed with
/// Floyd-Warshall.
PMedianInstance read_pmed(std::istream& in, std::size_t alpha);
PMedianInstance parse_orlib_pmed(const std::string& path, std::size_t alpha);
/// Writes every finite off-diagonal pair i < j as an edge.
void write_pmed(std::ostream& out, const PMedianInstance& inst);

/// In-place all-pairs shortest paths on a row-major matrix.
void floyd_warshall(std::vector<double>& dist, std::size_t n);

/// Exhaustive search over all C(n, p) facility sets.
Optimum brute_force(const PMedianInstance& inst);

double binomial(std::size_t n, std::size_t k);

}  // namespace rko::problems

#endif  // RKO_PROBLEMS_PMEDIAN_HPP_
