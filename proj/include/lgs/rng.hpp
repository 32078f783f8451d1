#pragma once

#include <cstdint>
#include <random>

namespace lgs {

// Deterministic 64-bit generator: std::mt19937_64 (bit-exact across
// platforms by the standard). Uniform conversions are done by hand because
// std::uniform_*_distribution is implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform in [0, 1).
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform integer in [0, n), n > 0. Rejection-free modulo is fine here:
  // bias is < 2^-50 for the small ranges we draw.
  std::uint64_t next_below(std::uint64_t n) { return next_u64() % n; }

  int next_int(int lo, int hi) {  // inclusive bounds
    return lo + static_cast<int>(next_below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

  bool next_bernoulli(double p) { return next_double() < p; }

  // Independent child stream, e.g. one per player or per instance.
  Rng split(std::uint64_t salt) {
    return Rng(next_u64() ^ (salt * 0x9e3779b97f4a7c15ULL));
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace lgs
