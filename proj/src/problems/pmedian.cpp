#include "rko/problems/pmedian.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numeric>
#include <ostream>

namespace rko::problems {

void PMedianInstance::validate() const {
  if (n == 0) throw std::invalid_argument("p-median instance needs vertices");
  if (dist.size() != n * n) throw std::invalid_argument("p-median distance matrix is not n x n");
  if (p < 1 || p > n) throw std::invalid_argument("p-median requires 1 <= p <= n");
  if (alpha < 1 || alpha > p) throw std::invalid_argument("p-median requires 1 <= alpha <= p");
  for (std::size_t i = 0; i < n; ++i) {
    if (at(i, i) != 0.0) throw std::invalid_argument("p-median distance diagonal must be zero");
    for (std::size_t j = 0; j < n; ++j) {
      if (at(i, j) < 0.0) throw std::invalid_argument("p-median distances must be non-negative");
    }
  }
}

std::vector<std::size_t> decode_facilities(std::span<const double> keys, std::size_t n) {
  std::vector<std::size_t> candidates(n);
  std::iota(candidates.begin(), candidates.end(), std::size_t{0});
  std::vector<std::size_t> open;
  open.reserve(keys.size());
  for (double key : keys) {
    const auto size = candidates.size();
    auto k = static_cast<std::size_t>(std::floor(key * static_cast<double>(size)));
    k = std::min(k, size - 1);
    open.push_back(candidates[k]);
    candidates.erase(candidates.begin() + static_cast<std::ptrdiff_t>(k));
  }
  return open;
}

double assignment_cost(const PMedianInstance& inst, const std::vector<std::size_t>& open) {
  std::vector<std::size_t> sorted = open;
  std::sort(sorted.begin(), sorted.end());
  std::vector<double> d(sorted.size());
  double total = 0.0;
  for (std::size_t v = 0; v < inst.n; ++v) {
    for (std::size_t k = 0; k < sorted.size(); ++k) d[k] = inst.at(v, sorted[k]);
    std::partial_sort(d.begin(), d.begin() + static_cast<std::ptrdiff_t>(inst.alpha), d.end());
    for (std::size_t k = 0; k < inst.alpha; ++k) total += d[k];
  }
  return total;
}

PMedianDecoder::PMedianDecoder(PMedianInstance inst) : inst_(std::move(inst)) { inst_.validate(); }

Fitness PMedianDecoder::decode(std::span<const double> keys) const {
  return Fitness::of(assignment_cost(inst_, decode_facilities(keys, inst_.n)));
}

std::string PMedianDecoder::describe(std::span<const double> keys) const {
  return "facilities " + one_based(decode_facilities(keys, inst_.n));
}

void floyd_warshall(std::vector<double>& dist, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      const double dik = dist[i * n + k];
      if (dik >= kUnreachable) continue;
      for (std::size_t j = 0; j < n; ++j) {
        const double via = dik + dist[k * n + j];
        if (via < dist[i * n + j]) dist[i * n + j] = via;
      }
    }
  }
}

PMedianInstance read_pmed(std::istream& in, std::size_t alpha) {
  TokenReader r(in);
  PMedianInstance inst;
  inst.n = r.next_count("vertex count");
  const std::size_t edges = r.next_count("edge count");
  inst.p = r.next_count("median count");
  inst.alpha = alpha;
  if (inst.n == 0) throw ParseError("vertex count must be positive", 1);
  if (inst.p < 1 || inst.p > inst.n) throw ParseError("median count must be in [1, n]", 1);
  if (alpha < 1 || alpha > inst.p) throw ParseError("alpha must be in [1, p]", 1);

  inst.dist.assign(inst.n * inst.n, kUnreachable);
  for (std::size_t i = 0; i < inst.n; ++i) cell(inst.dist, inst.n, i, i) = 0.0;
  for (std::size_t e = 0; e < edges; ++e) {
    const std::size_t at = r.line();
    const std::size_t i = r.next_count("edge endpoint");
    const std::size_t j = r.next_count("edge endpoint");
    const double cost = r.next_nonnegative("edge cost");
    if (i < 1 || j < 1 || i > inst.n || j > inst.n) throw ParseError("edge endpoint out of range", at);
    if (i == j) continue;
    cell(inst.dist, inst.n, i - 1, j - 1) = cost;
    cell(inst.dist, inst.n, j - 1, i - 1) = cost;
  }
  r.expect_end();
  floyd_warshall(inst.dist, inst.n);
  for (double d : inst.dist) inst.disconnected = inst.disconnected || d >= kUnreachable;
  return inst;
}

PMedianInstance parse_orlib_pmed(const std::string& path, std::size_t alpha) {
  auto in = open_input(path);
  return read_pmed(in, alpha);
}

void write_pmed(std::ostream& out, const PMedianInstance& inst) {
  std::size_t edges = 0;
  for (std::size_t i = 0; i < inst.n; ++i) {
    for (std::size_t j = i + 1; j < inst.n; ++j) edges += inst.at(i, j) < kUnreachable ? 1 : 0;
  }
  out << inst.n << ' ' << edges << ' ' << inst.p << '\n' << std::setprecision(17);
  for (std::size_t i = 0; i < inst.n; ++i) {
    for (std::size_t j = i + 1; j < inst.n; ++j) {
      if (inst.at(i, j) < kUnreachable) out << i + 1 << ' ' << j + 1 << ' ' << inst.at(i, j) << '\n';
    }
  }
}

double binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0.0;
  double c = 1.0;
  for (std::size_t i = 1; i <= k; ++i) c = c * static_cast<double>(n - k + i) / static_cast<double>(i);
  return std::round(c);
}

Optimum brute_force(const PMedianInstance& inst) {
  check_enumeration_size(binomial(inst.n, inst.p), "p-median");
  std::vector<std::size_t> open(inst.p);
  std::iota(open.begin(), open.end(), std::size_t{0});
  Optimum best{std::numeric_limits<double>::infinity(), ""};
  std::vector<std::size_t> best_open;
  for (;;) {
    const double c = assignment_cost(inst, open);
    if (c < best.objective) {
      best.objective = c;
      best_open = open;
    }
    // Next combination in lexicographic order.
    std::size_t i = inst.p;
    while (i > 0 && open[i - 1] == inst.n - inst.p + i - 1) --i;
    if (i == 0) break;
    ++open[i - 1];
    for (std::size_t j = i; j < inst.p; ++j) open[j] = open[j - 1] + 1;
  }
  best.certificate = "facilities " + one_based(best_open);
  return best;
}

}  // namespace rko::problems
