#pragma once

#include <cstdint>

namespace blochapprox {

// splitmix64 stream. Small, seedable and identical on every platform, which
// keeps randomized suites byte-reproducible (std:: distributions are not).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1).
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

 private:
  std::uint64_t state_;
};

// Independent stream for sample `index`; lets parallel workers draw the same
// values regardless of how samples are partitioned.
inline Rng derived_rng(std::uint64_t seed, std::uint64_t index) {
  Rng mix(seed ^ (0x9e3779b97f4a7c15ULL * (index + 1)));
  return Rng(mix.next_u64());
}

}  // namespace blochapprox
