#pragma once

// Deterministic keyed RNG substreams for the Monte Carlo engine.
//
// Each realization gets its own stream derived from (master_seed, index,
// tag), so results do not depend on scheduling or thread count.  The
// generator is xoshiro256++ seeded through splitmix64; distributions are
// implemented explicitly (the C++ standard leaves std::poisson_distribution
// et al. implementation-defined, which would break bit-reproducibility
// across toolchains).

#include <cmath>
#include <cstdint>

namespace csinr {

constexpr uint64_t kTagRealization = 0x7265616c697a6531ULL; // "realize1"
constexpr uint64_t kTagFading = 0x66616465732e2e31ULL;      // "fades..1"

namespace detail {

inline uint64_t mix64(uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

} // namespace detail

class RngStream {
 public:
  RngStream(uint64_t master_seed, uint64_t index, uint64_t tag) {
    uint64_t acc = detail::mix64(master_seed);
    acc = detail::mix64(acc ^ detail::mix64(index));
    acc = detail::mix64(acc ^ detail::mix64(tag));
    for (auto& w : s_) w = acc = detail::mix64(acc);
    if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = 1;
  }

  uint64_t next() {
    const uint64_t result = detail::rotl(s_[0] + s_[3], 23) + s_[0];
    const uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = detail::rotl(s_[3], 45);
    return result;
  }

  // uniform on [0, 1), 53 random bits
  double uniform01() { return (next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // unit-mean exponential
  double exponential() { return -std::log1p(-uniform01()); }

  // Knuth multiplication method, chunked so exp(-mean) never underflows.
  uint64_t poisson(double mean) {
    uint64_t k = 0;
    while (mean > 32.0) {
      k += poisson_small(32.0);
      mean -= 32.0;
    }
    return k + poisson_small(mean);
  }

 private:
  uint64_t poisson_small(double mean) {
    if (mean <= 0.0) return 0;
    const double limit = std::exp(-mean);
    uint64_t k = 0;
    double p = 1.0;
    do {
      ++k;
      p *= uniform01();
    } while (p > limit);
    return k - 1;
  }

  uint64_t s_[4];
};

} // namespace csinr
