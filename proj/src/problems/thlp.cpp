#include "rko/problems/thlp.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numeric>
#include <ostream>
#include <queue>

#include "rko/problems/pmedian.hpp"
#include "rko/problems/tsp.hpp"

namespace rko::problems {

void ThlpInstance::validate() const {
  if (n < 2) throw std::invalid_argument("THLP needs at least two nodes");
  if (hubs < 1 || hubs > n) throw std::invalid_argument("THLP requires 1 <= hubs <= n");
  if (discount < 0.0 || discount > 1.0) throw std::invalid_argument("THLP discount must be in [0,1]");
  if (cost.size() != n * n || demand.size() != n * n) throw std::invalid_argument("THLP dimension mismatch");
  for (std::size_t i = 0; i < n; ++i) {
    if (c(i, i) != 0.0) throw std::invalid_argument("THLP cost diagonal must be zero");
    for (std::size_t j = 0; j < n; ++j) {
      if (c(i, j) < 0.0 || w(i, j) < 0.0) throw std::invalid_argument("THLP costs and demands must be non-negative");
      if (c(i, j) != c(j, i)) throw std::invalid_argument("THLP costs must be symmetric");
    }
  }
}

std::vector<std::pair<std::size_t, std::size_t>> hub_pairs(std::size_t hubs) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < hubs; ++i) {
    for (std::size_t j = i + 1; j < hubs; ++j) pairs.emplace_back(i, j);
  }
  return pairs;
}

namespace {

struct DisjointSets {
  std::vector<std::size_t> parent;
  explicit DisjointSets(std::size_t k) : parent(k) { std::iota(parent.begin(), parent.end(), std::size_t{0}); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[b] = a;
    return true;
  }
};

/// Tree path cost between every pair of hub labels.
std::vector<double> tree_paths(const ThlpInstance& inst, const HubNetwork& net) {
  const std::size_t k = net.hubs.size();
  std::vector<std::vector<std::size_t>> adj(k);
  for (auto [a, b] : net.tree) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::vector<double> path(k * k, 0.0);
  std::vector<bool> seen(k);
  for (std::size_t src = 0; src < k; ++src) {
    std::fill(seen.begin(), seen.end(), false);
    std::queue<std::size_t> q;
    q.push(src);
    seen[src] = true;
    while (!q.empty()) {
      const std::size_t u = q.front();
      q.pop();
      for (std::size_t v : adj[u]) {
        if (seen[v]) continue;
        seen[v] = true;
        path[src * k + v] = path[src * k + u] + inst.c(net.hubs[u], net.hubs[v]);
        q.push(v);
      }
    }
  }
  return path;
}

}  // namespace

HubNetwork decode_network(const ThlpInstance& inst, std::span<const double> keys) {
  const std::size_t n = inst.n;
  const std::size_t p = inst.hubs;
  const auto order = sorted_order(keys.first(n));
  HubNetwork net;
  net.hubs.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(p));
  net.hub_of.assign(n, 0);
  for (std::size_t h = 0; h < p; ++h) net.hub_of[net.hubs[h]] = h;

  const auto assign_keys = keys.subspan(n, n - p);
  for (std::size_t k = 0; k < n - p; ++k) {
    auto h = static_cast<std::size_t>(std::floor(assign_keys[k] * static_cast<double>(p)));
    net.hub_of[order[p + k]] = std::min(h, p - 1);
  }

  const auto pairs = hub_pairs(p);
  const auto arc_order = sorted_order(keys.subspan(n + (n - p), pairs.size()));
  DisjointSets sets(p);
  for (std::size_t idx : arc_order) {
    if (net.tree.size() + 1 >= p) break;
    const auto [a, b] = pairs[idx];
    if (sets.unite(a, b)) net.tree.push_back(pairs[idx]);
  }
  return net;
}

double network_cost(const ThlpInstance& inst, const HubNetwork& net) {
  const std::size_t k = net.hubs.size();
  const auto path = tree_paths(inst, net);
  std::vector<double> access(inst.n);
  for (std::size_t i = 0; i < inst.n; ++i) access[i] = inst.c(i, net.hubs[net.hub_of[i]]);
  double total = 0.0;
  for (std::size_t i = 0; i < inst.n; ++i) {
    for (std::size_t j = 0; j < inst.n; ++j) {
      if (i == j || inst.w(i, j) == 0.0) continue;
      const double route = access[i] + inst.discount * path[net.hub_of[i] * k + net.hub_of[j]] + access[j];
      total += inst.w(i, j) * route;
    }
  }
  return total;
}

ThlpDecoder::ThlpDecoder(ThlpInstance inst) : inst_(std::move(inst)) { inst_.validate(); }

Fitness ThlpDecoder::decode(std::span<const double> keys) const {
  return Fitness::of(network_cost(inst_, decode_network(inst_, keys)));
}

std::string describe_network(const HubNetwork& net) {
  std::string out = "hubs " + one_based(net.hubs) + " | assignment";
  for (std::size_t i = 0; i < net.hub_of.size(); ++i) out += " " + std::to_string(net.hubs[net.hub_of[i]] + 1);
  out += " | tree";
  for (auto [a, b] : net.tree) out += " " + std::to_string(net.hubs[a] + 1) + "-" + std::to_string(net.hubs[b] + 1);
  return out;
}

std::string ThlpDecoder::describe(std::span<const double> keys) const {
  return describe_network(decode_network(inst_, keys));
}

ThlpInstance read_thlp(std::istream& in) {
  TokenReader r(in);
  ThlpInstance inst;
  inst.n = r.next_count("node count");
  inst.hubs = r.next_count("hub count");
  inst.discount = r.next_nonnegative("discount factor");
  if (inst.n < 2) throw ParseError("node count must be at least 2", 1);
  if (inst.hubs < 1 || inst.hubs > inst.n) throw ParseError("hub count must be in [1, n]", 1);
  if (inst.discount > 1.0) throw ParseError("discount factor must be in [0,1]", 1);
  inst.cost.resize(inst.n * inst.n);
  for (auto& x : inst.cost) x = r.next_nonnegative("cost");
  inst.demand.resize(inst.n * inst.n);
  for (auto& x : inst.demand) x = r.next_nonnegative("demand");
  r.expect_end();
  try {
    inst.validate();
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what(), r.line());
  }
  return inst;
}

ThlpInstance parse_thlp(const std::string& path) {
  auto in = open_input(path);
  return read_thlp(in);
}

void write_thlp(std::ostream& out, const ThlpInstance& inst) {
  out << inst.n << ' ' << inst.hubs << ' ' << std::setprecision(17) << inst.discount << '\n';
  for (const auto* m : {&inst.cost, &inst.demand}) {
    for (std::size_t i = 0; i < inst.n; ++i) {
      for (std::size_t j = 0; j < inst.n; ++j) out << (j ? " " : "") << (*m)[i * inst.n + j];
      out << '\n';
    }
  }
}

std::vector<std::pair<std::size_t, std::size_t>> pruefer_tree(const std::vector<std::size_t>& code,
                                                              std::size_t k) {
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  if (k < 2) return edges;
  std::vector<std::size_t> degree(k, 1);
  for (std::size_t c : code) ++degree[c];
  for (std::size_t c : code) {
    std::size_t leaf = 0;
    while (degree[leaf] != 1) ++leaf;
    edges.emplace_back(std::min(leaf, c), std::max(leaf, c));
    --degree[leaf];
    --degree[c];
  }
  std::size_t u = k, v = k;
  for (std::size_t i = 0; i < k; ++i) {
    if (degree[i] == 1) (u == k ? u : v) = i;
  }
  edges.emplace_back(u, v);
  return edges;
}

Optimum brute_force(const ThlpInstance& inst) {
  const std::size_t n = inst.n;
  const std::size_t p = inst.hubs;
  const double trees = p >= 2 ? std::pow(static_cast<double>(p), static_cast<double>(p - 2)) : 1.0;
  const double assignments = std::pow(static_cast<double>(p), static_cast<double>(n - p));
  check_enumeration_size(binomial(n, p) * assignments * trees, "THLP");

  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> all_trees;
  {
    const std::size_t len = p >= 2 ? p - 2 : 0;
    std::vector<std::size_t> code(len, 0);
    for (;;) {
      all_trees.push_back(pruefer_tree(code, p));
      std::size_t i = 0;
      while (i < len && code[i] == p - 1) code[i++] = 0;
      if (i == len) break;
      ++code[i];
    }
  }

  Optimum best{std::numeric_limits<double>::infinity(), ""};
  HubNetwork net;
  HubNetwork best_net;
  std::vector<std::size_t> chosen(p);
  std::iota(chosen.begin(), chosen.end(), std::size_t{0});
  for (;;) {
    net.hubs = chosen;
    std::vector<std::size_t> others;
    for (std::size_t v = 0, h = 0; v < n; ++v) {
      if (h < p && chosen[h] == v) {
        ++h;
      } else {
        others.push_back(v);
      }
    }
    net.hub_of.assign(n, 0);
    for (std::size_t h = 0; h < p; ++h) net.hub_of[chosen[h]] = h;
    std::vector<std::size_t> assign(others.size(), 0);
    for (;;) {
      for (std::size_t k = 0; k < others.size(); ++k) net.hub_of[others[k]] = assign[k];
      for (const auto& t : all_trees) {
        net.tree = t;
        const double f = network_cost(inst, net);
        if (f < best.objective) {
          best.objective = f;
          best_net = net;
        }
      }
      std::size_t k = 0;
      while (k < assign.size() && assign[k] == p - 1) assign[k++] = 0;
      if (k == assign.size()) break;
      ++assign[k];
    }
    std::size_t i = p;
    while (i > 0 && chosen[i - 1] == n - p + i - 1) --i;
    if (i == 0) break;
    ++chosen[i - 1];
    for (std::size_t j = i; j < p; ++j) chosen[j] = chosen[j - 1] + 1;
  }
  best.certificate = describe_network(best_net);
  return best;
}

}  // namespace rko::problems
