#include "rko/problems/ncgpp.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>

#include "rko/problems/tsp.hpp"

namespace rko::problems {

double NcgppInstance::total_handover() const {
  double total = 0.0;
  for (double x : handover) total += x;
  return total;
}

void NcgppInstance::validate() const {
  if (stations == 0 || controllers == 0) throw std::invalid_argument("NCGPP needs stations and controllers");
  if (traffic.size() != stations || capacity.size() != controllers ||
      handover.size() != stations * stations) {
    throw std::invalid_argument("NCGPP dimension mismatch");
  }
  for (double t : traffic) {
    if (t < 0.0) throw std::invalid_argument("NCGPP traffic must be non-negative");
  }
  for (double c : capacity) {
    if (!(c > 0.0)) throw std::invalid_argument("NCGPP capacities must be positive");
  }
  for (std::size_t a = 0; a < stations; ++a) {
    if (h(a, a) != 0.0) throw std::invalid_argument("NCGPP handover diagonal must be zero");
    for (std::size_t b = 0; b < stations; ++b) {
      if (h(a, b) < 0.0) throw std::invalid_argument("NCGPP handovers must be non-negative");
    }
  }
}

Partition decode_partition(const NcgppInstance& inst, std::span<const double> keys) {
  const std::size_t nb = inst.stations;
  const std::size_t nr = inst.controllers;
  const auto order = sorted_order(keys.first(nb));
  auto seeds = static_cast<std::size_t>(std::ceil(keys[nb] * static_cast<double>(nr)));
  seeds = std::min(std::max<std::size_t>(seeds, 1), nb);

  Partition part;
  part.controller.assign(nb, kUnassigned);
  std::vector<double> load(nr, 0.0);
  std::vector<std::vector<std::size_t>> members(nr);
  auto fits = [&](std::size_t s, std::size_t r) { return load[r] + inst.traffic[s] <= inst.capacity[r]; };
  auto assign = [&](std::size_t s, std::size_t r) {
    part.controller[s] = static_cast<int>(r);
    load[r] += inst.traffic[s];
    members[r].push_back(s);
  };

  std::size_t next_controller = 0;
  std::size_t pos = 0;
  for (; pos < seeds; ++pos) {
    const std::size_t s = order[pos];
    while (next_controller < nr && !fits(s, next_controller)) ++next_controller;
    if (next_controller == nr) break;
    assign(s, next_controller++);
  }
  for (; pos < nb; ++pos) {
    const std::size_t s = order[pos];
    std::size_t best = nr;
    double best_links = -1.0;
    for (std::size_t r = 0; r < nr; ++r) {
      if (!fits(s, r)) continue;
      double links = 0.0;
      for (std::size_t m : members[r]) links += inst.h(s, m) + inst.h(m, s);
      if (links > best_links) {
        best_links = links;
        best = r;
      }
    }
    if (best == nr) {
      ++part.unassigned;
    } else {
      assign(s, best);
    }
  }
  return part;
}

Fitness partition_fitness(const NcgppInstance& inst, const Partition& part) {
  double cut = 0.0;
  for (std::size_t a = 0; a < inst.stations; ++a) {
    if (part.controller[a] == kUnassigned) continue;
    for (std::size_t b = 0; b < inst.stations; ++b) {
      if (part.controller[b] != kUnassigned && part.controller[a] != part.controller[b]) cut += inst.h(a, b);
    }
  }
  return Fitness::of(cut, static_cast<double>(part.unassigned) * inst.total_handover());
}

NcgppDecoder::NcgppDecoder(NcgppInstance inst) : inst_(std::move(inst)) { inst_.validate(); }

Fitness NcgppDecoder::decode(std::span<const double> keys) const {
  return partition_fitness(inst_, decode_partition(inst_, keys));
}

namespace {

std::string describe_partition(const NcgppInstance& inst, const Partition& part,
                               const std::vector<std::size_t>& station_order) {
  std::string out;
  for (std::size_t r = 0; r < inst.controllers; ++r) {
    if (r) out += " | ";
    out += "RNC" + std::to_string(r + 1) + ":";
    for (std::size_t s : station_order) {
      if (part.controller[s] == static_cast<int>(r)) out += " " + std::to_string(s + 1);
    }
  }
  if (part.unassigned) out += " | unassigned: " + std::to_string(part.unassigned);
  return out;
}

}  // namespace

std::string NcgppDecoder::describe(std::span<const double> keys) const {
  return describe_partition(inst_, decode_partition(inst_, keys), sorted_order(keys.first(inst_.stations)));
}

NcgppInstance read_ncgpp(std::istream& in) {
  TokenReader r(in);
  NcgppInstance inst;
  inst.stations = r.next_count("station count");
  inst.controllers = r.next_count("controller count");
  if (inst.stations == 0 || inst.controllers == 0) throw ParseError("counts must be positive", 1);
  inst.traffic.resize(inst.stations);
  for (auto& t : inst.traffic) t = r.next_nonnegative("traffic");
  inst.capacity.resize(inst.controllers);
  for (auto& c : inst.capacity) {
    const std::size_t at = r.line();
    c = r.next_double("capacity");
    if (!(c > 0.0)) throw ParseError("capacity must be positive", at);
  }
  inst.handover.resize(inst.stations * inst.stations);
  for (auto& x : inst.handover) x = r.next_nonnegative("handover");
  r.expect_end();
  try {
    inst.validate();
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what(), r.line());
  }
  return inst;
}

NcgppInstance parse_ncgpp(const std::string& path) {
  auto in = open_input(path);
  return read_ncgpp(in);
}

void write_ncgpp(std::ostream& out, const NcgppInstance& inst) {
  out << inst.stations << ' ' << inst.controllers << '\n' << std::setprecision(17);
  auto row = [&](const std::vector<double>& v, std::size_t from, std::size_t count) {
    for (std::size_t i = 0; i < count; ++i) out << (i ? " " : "") << v[from + i];
    out << '\n';
  };
  row(inst.traffic, 0, inst.stations);
  row(inst.capacity, 0, inst.controllers);
  for (std::size_t a = 0; a < inst.stations; ++a) row(inst.handover, a * inst.stations, inst.stations);
}

Optimum brute_force(const NcgppInstance& inst) {
  check_enumeration_size(std::pow(static_cast<double>(inst.controllers), static_cast<double>(inst.stations)),
                         "NCGPP");
  Partition part;
  part.controller.assign(inst.stations, 0);
  Optimum best{std::numeric_limits<double>::infinity(), ""};
  Partition best_part;
  std::vector<double> load(inst.controllers);
  for (;;) {
    std::fill(load.begin(), load.end(), 0.0);
    bool feasible = true;
    for (std::size_t s = 0; s < inst.stations; ++s) {
      const auto r = static_cast<std::size_t>(part.controller[s]);
      load[r] += inst.traffic[s];
      if (load[r] > inst.capacity[r]) feasible = false;
    }
    if (feasible) {
      const double f = partition_fitness(inst, part).objective;
      if (f < best.objective) {
        best.objective = f;
        best_part = part;
      }
    }
    std::size_t s = 0;
    while (s < inst.stations && part.controller[s] == static_cast<int>(inst.controllers) - 1) {
      part.controller[s++] = 0;
    }
    if (s == inst.stations) break;
    ++part.controller[s];
  }
  if (best_part.controller.empty()) throw std::domain_error("NCGPP instance has no capacity-feasible assignment");
  std::vector<std::size_t> natural(inst.stations);
  for (std::size_t s = 0; s < inst.stations; ++s) natural[s] = s;
  best.certificate = describe_partition(inst, best_part, natural);
  return best;
}

}  // namespace rko::problems
