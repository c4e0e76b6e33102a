#include "rko/problems/set_cover.hpp"

#include <cmath>
#include <ostream>

namespace rko::problems {

bool SetCoverInstance::coverable() const {
  for (std::size_t i = 0; i < rows; ++i) {
    bool any = false;
    for (std::size_t j = 0; j < cols && !any; ++j) any = covers(i, j);
    if (!any) return false;
  }
  return true;
}

void SetCoverInstance::validate() const {
  if (rows == 0 || cols == 0) throw std::invalid_argument("set cover instance needs rows and columns");
  if (matrix.size() != rows * cols) throw std::invalid_argument("set cover matrix is not m x n");
  for (auto v : matrix) {
    if (v > 1) throw std::invalid_argument("set cover matrix must be binary");
  }
}

namespace {

std::vector<std::size_t> row_counts(const SetCoverInstance& inst, const std::vector<bool>& chosen) {
  std::vector<std::size_t> count(inst.rows, 0);
  for (std::size_t j = 0; j < inst.cols; ++j) {
    if (!chosen[j]) continue;
    for (std::size_t i = 0; i < inst.rows; ++i) count[i] += inst.covers(i, j) ? 1 : 0;
  }
  return count;
}

}  // namespace

CoverResult decode_cover(const SetCoverInstance& inst, std::span<const double> keys) {
  std::vector<bool> chosen(inst.cols);
  for (std::size_t j = 0; j < inst.cols; ++j) chosen[j] = keys[j] >= 0.5;
  auto count = row_counts(inst, chosen);

  for (;;) {
    std::size_t best_col = inst.cols;
    std::size_t best_gain = 0;
    for (std::size_t j = 0; j < inst.cols; ++j) {
      if (chosen[j]) continue;
      std::size_t gain = 0;
      for (std::size_t i = 0; i < inst.rows; ++i) gain += (count[i] == 0 && inst.covers(i, j)) ? 1 : 0;
      if (gain > best_gain) {
        best_gain = gain;
        best_col = j;
      }
    }
    if (best_col == inst.cols) break;
    chosen[best_col] = true;
    for (std::size_t i = 0; i < inst.rows; ++i) count[i] += inst.covers(i, best_col) ? 1 : 0;
  }

  // A column is redundant when every row it covers is covered at least twice.
  for (std::size_t j = 0; j < inst.cols; ++j) {
    if (!chosen[j]) continue;
    bool redundant = true;
    for (std::size_t i = 0; i < inst.rows && redundant; ++i) {
      if (inst.covers(i, j) && count[i] < 2) redundant = false;
    }
    if (!redundant) continue;
    chosen[j] = false;
    for (std::size_t i = 0; i < inst.rows; ++i) count[i] -= inst.covers(i, j) ? 1 : 0;
  }

  CoverResult out;
  for (std::size_t j = 0; j < inst.cols; ++j) {
    if (chosen[j]) out.columns.push_back(j);
  }
  for (auto c : count) out.uncovered += c == 0 ? 1 : 0;
  return out;
}

Fitness cover_fitness(const SetCoverInstance& inst, const std::vector<std::size_t>& columns) {
  std::vector<bool> covered(inst.rows, false);
  for (auto j : columns) {
    for (std::size_t i = 0; i < inst.rows; ++i) covered[i] = covered[i] || inst.covers(i, j);
  }
  std::size_t uncovered = 0;
  for (bool c : covered) uncovered += c ? 0 : 1;
  return Fitness::of(static_cast<double>(columns.size()),
                     static_cast<double>(uncovered) * static_cast<double>(inst.cols));
}

SetCoverDecoder::SetCoverDecoder(SetCoverInstance inst) : inst_(std::move(inst)) { inst_.validate(); }

Fitness SetCoverDecoder::decode(std::span<const double> keys) const {
  return cover_fitness(inst_, decode_cover(inst_, keys).columns);
}

std::string SetCoverDecoder::describe(std::span<const double> keys) const {
  const auto r = decode_cover(inst_, keys);
  std::string s = "columns " + one_based(r.columns);
  if (r.uncovered) s += " uncovered " + std::to_string(r.uncovered);
  return s;
}

SetCoverInstance read_set_cover(std::istream& in) {
  TokenReader r(in);
  SetCoverInstance inst;
  inst.rows = r.next_count("row count");
  inst.cols = r.next_count("column count");
  if (inst.rows == 0 || inst.cols == 0) throw ParseError("row and column counts must be positive", 1);
  inst.matrix.resize(inst.rows * inst.cols);
  for (auto& v : inst.matrix) {
    const std::size_t at = r.line();
    const double x = r.next_double("matrix entry");
    if (x != 0.0 && x != 1.0) throw ParseError("matrix entries must be 0 or 1", at);
    v = static_cast<std::uint8_t>(x);
  }
  r.expect_end();
  return inst;
}

SetCoverInstance parse_set_cover(const std::string& path) {
  auto in = open_input(path);
  return read_set_cover(in);
}

void write_set_cover(std::ostream& out, const SetCoverInstance& inst) {
  out << inst.rows << ' ' << inst.cols << '\n';
  for (std::size_t i = 0; i < inst.rows; ++i) {
    for (std::size_t j = 0; j < inst.cols; ++j) out << (j ? " " : "") << int{inst.covers(i, j)};
    out << '\n';
  }
}

Optimum brute_force(const SetCoverInstance& inst) {
  check_enumeration_size(std::ldexp(1.0, static_cast<int>(inst.cols)), "set cover");
  Optimum best{std::numeric_limits<double>::infinity(), ""};
  std::vector<std::size_t> best_cols;
  std::vector<std::size_t> cols;
  const std::uint64_t subsets = std::uint64_t{1} << inst.cols;
  for (std::uint64_t mask = 0; mask < subsets; ++mask) {
    cols.clear();
    for (std::size_t j = 0; j < inst.cols; ++j) {
      if (mask >> j & 1U) cols.push_back(j);
    }
    const double f = cover_fitness(inst, cols).objective;
    if (f < best.objective) {
      best.objective = f;
      best_cols = cols;
    }
  }
  best.certificate = "columns " + one_based(best_cols);
  return best;
}

}  // namespace rko::problems
