#include "support.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>

namespace rko::testing {

namespace {

double draw_int(RngStream& rng, int lo, int hi) {
  return static_cast<double>(lo + static_cast<int>(rng.index(static_cast<std::size_t>(hi - lo + 1))));
}

std::vector<double> euclidean(RngStream& rng, std::size_t n) {
  std::vector<double> x(n), y(n), d(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = draw_int(rng, 0, 100);
    y[i] = draw_int(rng, 0, 100);
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) d[i * n + j] = std::round(std::hypot(x[i] - x[j], y[i] - y[j]));
  }
  return d;
}

}  // namespace

TspInstance random_tsp(RngStream& rng, std::size_t n) { return TspInstance{n, euclidean(rng, n)}; }

SetCoverInstance random_set_cover(RngStream& rng, std::size_t rows, std::size_t cols) {
  SetCoverInstance inst{rows, cols, std::vector<std::uint8_t>(rows * cols, 0)};
  for (auto& v : inst.matrix) v = rng.uniform() < 0.3 ? 1 : 0;
  for (std::size_t i = 0; i < rows; ++i) inst.matrix[i * cols + rng.index(cols)] = 1;
  return inst;
}

PMedianInstance random_pmedian(RngStream& rng, std::size_t n, std::size_t p, std::size_t alpha) {
  PMedianInstance inst;
  inst.n = n;
  inst.p = p;
  inst.alpha = alpha;
  inst.dist.assign(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) inst.dist[i * n + j] = inst.dist[j * n + i] = draw_int(rng, 1, 100);
  }
  return inst;
}

NcgppInstance random_ncgpp(RngStream& rng, std::size_t stations, std::size_t controllers) {
  NcgppInstance inst;
  inst.stations = stations;
  inst.controllers = controllers;
  double total = 0.0;
  for (std::size_t b = 0; b < stations; ++b) {
    inst.traffic.push_back(draw_int(rng, 1, 5));
    total += inst.traffic.back();
  }
  const double cap = std::ceil(1.3 * total / static_cast<double>(controllers)) + 5.0;
  inst.capacity.assign(controllers, cap);
  inst.handover.assign(stations * stations, 0.0);
  for (std::size_t a = 0; a < stations; ++a) {
    for (std::size_t b = 0; b < stations; ++b) {
      if (a != b && rng.uniform() < 0.6) inst.handover[a * stations + b] = draw_int(rng, 1, 50);
    }
  }
  return inst;
}

ThlpInstance random_thlp(RngStream& rng, std::size_t n, std::size_t hubs) {
  ThlpInstance inst;
  inst.n = n;
  inst.hubs = hubs;
  inst.discount = 0.75;
  inst.cost = euclidean(rng, n);
  inst.demand.assign(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j) inst.demand[i * n + j] = draw_int(rng, 0, 10);
    }
  }
  return inst;
}

NcgppInstance worked_example_ncgpp() {
  NcgppInstance inst;
  inst.stations = 6;
  inst.controllers = 2;
  inst.traffic.assign(6, 1.0);
  inst.capacity.assign(2, 3.0);
  inst.handover.assign(36, 0.0);
  auto set = [&](std::size_t a, std::size_t b, double v) { inst.handover[(a - 1) * 6 + (b - 1)] = v; };
  set(1, 2, 50);
  set(2, 1, 30);
  set(1, 3, 40);
  set(2, 3, 60);
  set(2, 5, 116);
  set(4, 5, 191);
  set(6, 4, 157);
  set(5, 6, 100);
  set(6, 5, 50);
  set(3, 6, 13);
  return inst;
}

std::vector<NamedDecoder> small_decoders(RngStream& rng) {
  return {
      {"tsp", std::make_shared<TspDecoder>(random_tsp(rng, 9))},
      {"setcover", std::make_shared<SetCoverDecoder>(random_set_cover(rng, 8, 12))},
      {"anpmp", std::make_shared<PMedianDecoder>(random_pmedian(rng, 12, 4, 2))},
      {"ncgpp", std::make_shared<NcgppDecoder>(random_ncgpp(rng, 9, 3))},
      {"thlp", std::make_shared<ThlpDecoder>(random_thlp(rng, 7, 3))},
  };
}

double oracle_tour_cost(const TspInstance& inst, const std::vector<std::size_t>& tour) {
  double c = 0.0;
  for (std::size_t k = 0; k < tour.size(); ++k) {
    const std::size_t a = tour[k];
    const std::size_t b = tour[(k + 1) % tour.size()];
    c += inst.dist[a * inst.n + b];
  }
  return c;
}

double oracle_pmedian_cost(const PMedianInstance& inst, const std::vector<std::size_t>& open) {
  double total = 0.0;
  for (std::size_t v = 0; v < inst.n; ++v) {
    std::vector<double> d;
    for (std::size_t f : open) d.push_back(inst.dist[v * inst.n + f]);
    std::sort(d.begin(), d.end());
    for (std::size_t k = 0; k < inst.alpha; ++k) total += d[k];
  }
  return total;
}

double oracle_cut(const NcgppInstance& inst, const std::vector<int>& controller) {
  double cut = 0.0;
  for (std::size_t a = 0; a < inst.stations; ++a) {
    for (std::size_t b = 0; b < inst.stations; ++b) {
      if (controller[a] >= 0 && controller[b] >= 0 && controller[a] != controller[b]) {
        cut += inst.handover[a * inst.stations + b];
      }
    }
  }
  return cut;
}

double oracle_thlp_cost(const ThlpInstance& inst, const HubNetwork& net) {
  const std::size_t n = inst.n;
  const double inf = std::numeric_limits<double>::infinity();
  // Shortest paths over tree edges only; in a tree this is the unique path.
  std::vector<double> d(n * n, inf);
  for (std::size_t i = 0; i < n; ++i) d[i * n + i] = 0.0;
  for (auto [a, b] : net.tree) {
    const std::size_t u = net.hubs[a];
    const std::size_t v = net.hubs[b];
    d[u * n + v] = d[v * n + u] = inst.cost[u * n + v];
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) d[i * n + j] = std::min(d[i * n + j], d[i * n + k] + d[k * n + j]);
    }
  }
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const std::size_t hi = net.hubs[net.hub_of[i]];
      const std::size_t hj = net.hubs[net.hub_of[j]];
      total += inst.demand[i * n + j] *
               (inst.cost[i * n + hi] + inst.discount * d[hi * n + hj] + inst.cost[hj * n + j]);
    }
  }
  return total;
}

int oracle_min_cover(const SetCoverInstance& inst) {
  int best = -1;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << inst.cols); ++mask) {
    bool ok = true;
    for (std::size_t i = 0; i < inst.rows && ok; ++i) {
      bool hit = false;
      for (std::size_t j = 0; j < inst.cols && !hit; ++j) hit = (mask >> j & 1U) && inst.matrix[i * inst.cols + j];
      ok = hit;
    }
    const int size = std::popcount(mask);
    if (ok && (best < 0 || size < best)) best = size;
  }
  return best;
}

std::string write_temp(const std::string& name, const std::string& text) {
  const auto dir = std::filesystem::temp_directory_path() / "rko_tests";
  std::filesystem::create_directories(dir);
  const auto path = dir / name;
  std::ofstream(path) << text;
  return path.string();
}

}  // namespace rko::testing
