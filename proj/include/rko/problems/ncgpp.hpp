#ifndef RKO_PROBLEMS_NCGPP_HPP_
#define RKO_PROBLEMS_NCGPP_HPP_

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "rko/core.hpp"
#include "rko/problems/common.hpp"

namespace rko::problems {

/// Capacitated assignment of base stations to controllers (RNCs) that
/// minimizes the handovers crossing controller boundaries.
struct NcgppInstance {
  std::size_t stations = 0;
  std::size_t controllers = 0;
  std::vector<double> traffic;
  std::vector<double> capacity;
  /// Row-major stations x stations handover counts; may be asymmetric.
  std::vector<double> handover;

  double h(std::size_t a, std::size_t b) const { return handover[a * stations + b]; }
  double total_handover() const;
  void validate() const;
};

inline constexpr int kUnassigned = -1;

struct Partition {
  /// Controller of every station (0-based) or kUnassigned.
  std::vector<int> controller;
  std::size_t unassigned = 0;
};

Partition decode_partition(const NcgppInstance& inst, std::span<const double> keys);

/// Handovers between assigned stations in different controllers plus
/// total_handover() per unassigned station.
Fitness partition_fitness(const NcgppInstance& inst, const Partition& part);

class NcgppDecoder : public Decoder {
 public:
  explicit NcgppDecoder(NcgppInstance inst);
  std::size_t dimension() const override { return inst_.stations + 1; }
  Fitness decode(std::span<const double> keys) const override;
  /// "RNC1: 2 3 1 | RNC2: 4 5 6" with stations in assignment order.
  std::string describe(std::span<const double> keys) const override;
  const NcgppInstance& instance() const { return inst_; }

 private:
  NcgppInstance inst_;
};

NcgppInstance read_ncgpp(std::istream& in);
NcgppInstance parse_ncgpp(const std::string& path);
void write_ncgpp(std::ostream& out, const NcgppInstance& inst);

/// Exhaustive search over all capacity-feasible assignments; throws
/// std::domain_error when none exists.
Optimum brute_force(const NcgppInstance& inst);

}  // namespace rko::problems

#endif  // RKO_PROBLEMS_NCGPP_HPP_
