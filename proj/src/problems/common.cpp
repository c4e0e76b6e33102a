#include "rko/problems/common.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace rko::problems {

void check_enumeration_size(double states, const std::string& what) {
  if (states > kMaxEnumeration) {
    std::ostringstream msg;
    msg << what << ": " << states << " states exceed the enumeration limit of " << kMaxEnumeration;
    throw SizeGuardError(msg.str());
  }
}

TokenReader::TokenReader(std::istream& in) {
  std::string text;
  std::size_t line = 0;
  while (std::getline(in, text)) {
    ++line;
    std::istringstream words(text);
    std::string w;
    while (words >> w) tokens_.push_back({w, line});
  }
  last_line_ = std::max<std::size_t>(line, 1);
}

std::size_t TokenReader::line() const { return done() ? last_line_ : tokens_[pos_].line; }

const TokenReader::Token& TokenReader::next(const char* what) {
  if (done()) throw ParseError(std::string("unexpected end of input, expected ") + what, last_line_);
  return tokens_[pos_++];
}

double TokenReader::next_double(const char* what) {
  const Token& t = next(what);
  double value = 0.0;
  const char* first = t.text.data();
  const char* last = first + t.text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || !std::isfinite(value)) {
    throw ParseError(std::string("expected ") + what + ", got '" + t.text + "'", t.line);
  }
  return value;
}

double TokenReader::next_nonnegative(const char* what) {
  const std::size_t at = line();
  const double v = next_double(what);
  if (v < 0.0) throw ParseError(std::string(what) + " must be non-negative", at);
  return v;
}

std::size_t TokenReader::next_count(const char* what) {
  const std::size_t at = line();
  const double v = next_double(what);
  if (v < 0.0 || v != std::floor(v)) throw ParseError(std::string(what) + " must be a non-negative integer", at);
  return static_cast<std::size_t>(v);
}

void TokenReader::expect_end() const {
  if (!done()) throw ParseError("unexpected trailing data '" + tokens_[pos_].text + "'", tokens_[pos_].line);
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return in;
}

std::string one_based(const std::vector<std::size_t>& indices) {
  std::string out;
  for (std::size_t i = 0; i < indices.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(indices[i] + 1);
  }
  return out;
}

}  // namespace rko::problems
