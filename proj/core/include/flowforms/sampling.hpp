#pragma once

#include <cstdint>

#include "flowforms/vec.hpp"

namespace flowforms {

// splitmix64: small deterministic PRNG for tests and point scattering.
struct SplitMix64 {
  uint64_t state;
  explicit SplitMix64(uint64_t seed) : state(seed) {}
  uint64_t next() {
    uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  // Uniform in [0, 1).
  double next_double() { return (next() >> 11) * 0x1.0p-53; }
  // Uniform in {lo, ..., hi}.
  int next_int(int lo, int hi) {
    return lo + static_cast<int>(next() % static_cast<uint64_t>(hi - lo + 1));
  }
};

// Additive low-discrepancy sequence (generalized golden-ratio steps).
// point(j) is deterministic in j alone; seed only shifts the phase.
class QuasiPoints {
 public:
  QuasiPoints(int dim, uint64_t seed = 0);
  Vec point(long long j) const;

 private:
  int dim_;
  std::array<double, 3> alpha_{};
  std::array<double, 3> phase_{};
};

}  // namespace flowforms
