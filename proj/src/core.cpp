#include "rko/core.hpp"

#include <cmath>
#include <numeric>

namespace rko {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t hash_combine(std::uint64_t h, std::uint64_t v) {
  std::uint64_t s = h ^ (v + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2));
  return splitmix64(s);
}

std::uint64_t hash_string(std::string_view s) {
  // FNV-1a
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return h;
}

namespace {

std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t s = seed;
  std::uint64_t a = splitmix64(s);
  std::uint64_t t = stream ^ 0xD1B54A32D192ED03ULL;
  std::uint64_t b = splitmix64(t);
  std::uint64_t mix = a ^ (b * 0x9E3779B97F4A7C15ULL);
  return splitmix64(mix);
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream)
    : seed_(seed), stream_(stream), engine_(stream_seed(seed, stream)) {}

RngStream::result_type RngStream::operator()() { return engine_(); }

double RngStream::uniform() {
  // 53 random mantissa bits: always strictly below 1.
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double RngStream::uniform(double lo, double hi) {
  if (!(lo < hi)) throw IntervalError("uniform draw needs lo < hi");
  double x = lo + (hi - lo) * uniform();
  if (x >= hi) x = std::nextafter(hi, lo);
  return x;
}

double RngStream::uniform_open(double lo, double hi) {
  if (!(lo < hi)) throw IntervalError("uniform draw needs lo < hi");
  for (;;) {
    double x = lo + (hi - lo) * uniform();
    if (x > lo && x < hi) return x;
  }
}

std::size_t RngStream::index(std::size_t n) {
  if (n == 0) throw std::invalid_argument("index draw over an empty range");
  __extension__ using wide = unsigned __int128;
  return static_cast<std::size_t>((static_cast<wide>(engine_()) * n) >> 64);
}

KeyVector random_vector(std::size_t n, RngStream& rng) {
  if (n == 0) throw DimensionError("random-key vector needs n >= 1");
  KeyVector keys(n);
  for (auto& k : keys) k = rng.uniform();
  return keys;
}

double unif_rand(RngStream& rng, double lo, double hi) { return rng.uniform(lo, hi); }

std::vector<std::size_t> random_order(std::size_t n, RngStream& rng) {
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  // Fisher-Yates with our own index draw to stay library-independent.
  for (std::size_t i = n; i > 1; --i) {
    std::size_t j = rng.index(i);
    std::swap(order[i - 1], order[j]);
  }
  return order;
}

Fitness evaluate(const Decoder& decoder, std::span<const double> keys,
                 EvaluationCounter& counter) {
  if (keys.size() != decoder.dimension()) {
    throw DimensionError("key vector length " + std::to_string(keys.size()) +
                         " does not match decoder dimension " +
                         std::to_string(decoder.dimension()));
  }
  counter.add();
  return decoder.decode(keys);
}

}  // namespace rko
