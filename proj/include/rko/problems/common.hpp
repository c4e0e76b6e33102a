#ifndef RKO_PROBLEMS_COMMON_HPP_
#define RKO_PROBLEMS_COMMON_HPP_

#include <cstddef>
#include <fstream>
#include <istream>
#include <stdexcept>
#include <string>
#include <vector>

namespace rko::problems {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Thrown by the exhaustive solvers when the search space is too large.
class SizeGuardError : public std::length_error {
 public:
  using std::length_error::length_error;
};

inline constexpr double kMaxEnumeration = 1e8;

/// Throws SizeGuardError when `states` exceeds kMaxEnumeration.
void check_enumeration_size(double states, const std::string& what);

struct Optimum {
  double objective;
  /// Decoded description of one optimal solution.
  std::string certificate;
};

/// Whitespace-separated tokens with their source line numbers.
class TokenReader {
 public:
  explicit TokenReader(std::istream& in);

  bool done() const { return pos_ >= tokens_.size(); }
  std::size_t line() const;
  /// Line of the next token; the last line when exhausted.
  double next_double(const char* what);
  double next_nonnegative(const char* what);
  std::size_t next_count(const char* what);
  /// Fails when tokens remain.
  void expect_end() const;

 private:
  struct Token {
    std::string text;
    std::size_t line;
  };
  const Token& next(const char* what);

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  std::size_t last_line_ = 1;
};

/// Opens `path` for reading or throws std::runtime_error.
std::ifstream open_input(const std::string& path);

/// Row-major square matrix helpers.
inline double& cell(std::vector<double>& m, std::size_t n, std::size_t i, std::size_t j) {
  return m[i * n + j];
}
inline double cell(const std::vector<double>& m, std::size_t n, std::size_t i, std::size_t j) {
  return m[i * n + j];
}

/// Formats 0-based indices as a 1-based space-separated list.
std::string one_based(const std::vector<std::size_t>& indices);

}  // namespace rko::problems

#endif  // RKO_PROBLEMS_COMMON_HPP_
