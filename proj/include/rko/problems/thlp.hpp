#ifndef RKO_PROBLEMS_THLP_HPP_
#define RKO_PROBLEMS_THLP_HPP_

#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rko/core.hpp"
#include "rko/problems/common.hpp"

namespace rko::problems {

/// Tree of hubs: choose hubs, link them with a spanning tree, attach every
/// other node to one hub. Flows travel access arc, discounted tree path,
/// access arc.
struct ThlpInstance {
  std::size_t n = 0;
  std::size_t hubs = 0;
  double discount = 0.0;
  /// Row-major n x n symmetric costs with zero diagonal.
  std::vector<double> cost;
  /// Row-major n x n demands.
  std::vector<double> demand;

  double c(std::size_t i, std::size_t j) const { return cost[i * n + j]; }
  double w(std::size_t i, std::size_t j) const { return demand[i * n + j]; }
  std::size_t key_count() const { return n + (n - hubs) + hubs * (hubs - 1) / 2; }
  void validate() const;
};

struct HubNetwork {
  /// Hub nodes in decode order; positions in this vector are hub labels.
  std::vector<std::size_t> hubs;
  /// Hub label of every node.
  std::vector<std::size_t> hub_of;
  /// Tree edges as pairs of hub labels.
  std::vector<std::pair<std::size_t, std::size_t>> tree;
};

/// Canonical (i < j) lexicographic enumeration of label pairs.
std::vector<std::pair<std::size_t, std::size_t>> hub_pairs(std::size_t hubs);

HubNetwork decode_network(const ThlpInstance& inst, std::span<const double> keys);

/// Off-diagonal demand routed through the network.
double network_cost(const ThlpInstance& inst, const HubNetwork& net);

class ThlpDecoder : public Decoder {
 public:
  explicit ThlpDecoder(ThlpInstance inst);
  std::size_t dimension() const override { return inst_.key_count(); }
  Fitness decode(std::span<const double> keys) const override;
  std::string describe(std::span<const double> keys) const override;
  const ThlpInstance& instance() const { return inst_; }

 private:
  ThlpInstance inst_;
};

std::string describe_network(const HubNetwork& net);

ThlpInstance read_thlp(std::istream& in);
ThlpInstance parse_thlp(const std::string& path);
void write_thlp(std::ostream& out, const ThlpInstance& inst);

/// Decodes a Pruefer sequence over labels 0..k-1 into k-1 tree edges.
std::vector<std::pair<std::size_t, std::size_t>> pruefer_tree(const std::vector<std::size_t>& code,
                                                              std::size_t k);

/// Exhaustive search over hub sets, assignments and labeled trees.
Optimum brute_force(const ThlpInstance& inst);

}  // namespace rko::problems

#endif  // RKO_PROBLEMS_THLP_HPP_
