#include "flowforms/sampling.hpp"

#include <cmath>

namespace flowforms {

namespace {
// Unique real root of x^(d+1) = x + 1 ("plastic" constants) per dimension.
double harmonious(int d) {
  double x = 1.5;
  for (int it = 0; it < 64; ++it) {
    x = std::pow(1.0 + x, 1.0 / (d + 1));
  }
  return x;
}
}  // namespace

QuasiPoints::QuasiPoints(int dim, uint64_t seed) : dim_(dim) {
  double g = harmonious(dim);
  double a = 1.0;
  for (int i = 0; i < dim_; ++i) {
    a /= g;
    alpha_[i] = a;
  }
  SplitMix64 rng(seed);
  for (int i = 0; i < dim_; ++i) phase_[i] = seed == 0 ? 0.5 : rng.next_double();
}

Vec QuasiPoints::point(long long j) const {
  Vec p(dim_);
  for (int i = 0; i < dim_; ++i) {
    p[i] = wrap01(phase_[i] + alpha_[i] * static_cast<double>(j));
  }
  return p;
}

}  // namespace flowforms
