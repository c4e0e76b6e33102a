#ifndef RKO_PROBLEMS_SET_COVER_HPP_
#define RKO_PROBLEMS_SET_COVER_HPP_

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "rko/core.hpp"
#include "rko/problems/common.hpp"

namespace rko::problems {

struct SetCoverInstance {
  std::size_t rows = 0;
  std::size_t cols = 0;
  /// Row-major rows x cols 0/1 matrix; covers(i, j) means column j covers row i.
  std::vector<std::uint8_t> matrix;

  bool covers(std::size_t row, std::size_t col) const { return matrix[row * cols + col] != 0; }
  /// True when every row is covered by at least one column.
  bool coverable() const;
  void validate() const;
};

struct CoverResult {
  /// Selected columns, ascending, 0-based.
  std::vector<std::size_t> columns;
  std::size_t uncovered = 0;
};

/// Three phases: keep columns whose key is >= 0.5, complete the cover
/// greedily (most newly covered rows, smallest index on ties), then drop
/// redundant columns scanning by ascending index.
CoverResult decode_cover(const SetCoverInstance& inst, std::span<const double> keys);

/// |columns| plus uncovered rows times the column count.
Fitness cover_fitness(const SetCoverInstance& inst, const std::vector<std::size_t>& columns);

class SetCoverDecoder : public Decoder {
 public:
  explicit SetCoverDecoder(SetCoverInstance inst);
  std::size_t dimension() const override { return inst_.cols; }
  Fitness decode(std::span<const double> keys) const override;
  std::string describe(std::span<const double> keys) const override;
  const SetCoverInstance& instance() const { return inst_; }

 private:
  SetCoverInstance inst_;
};

SetCoverInstance read_set_cover(std::istream& in);
SetCoverInstance parse_set_cover(const std::string& path);
void write_set_cover(std::ostream& out, const SetCoverInstance& inst);

/// Exhaustive search over all 2^n column subsets.
Optimum brute_force(const SetCoverInstance& inst);

}  // namespace rko::problems

#endif  // RKO_PROBLEMS_SET_COVER_HPP_
