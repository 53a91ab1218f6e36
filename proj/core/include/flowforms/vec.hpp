#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <initializer_list>

#include "flowforms/errors.hpp"

namespace flowforms {

// Point/vector on the torus cover R^n, n in {1,2,3}.
class Vec {
 public:
  Vec() = default;
  explicit Vec(int dim, double fill = 0.0) : n_(dim) {
    if (dim < 1 || dim > 3) throw InputError("Vec: dim must be 1, 2 or 3");
    x_.fill(0.0);
    for (int i = 0; i < n_; ++i) x_[i] = fill;
  }
  Vec(std::initializer_list<double> xs) : n_(static_cast<int>(xs.size())) {
    if (n_ < 1 || n_ > 3) throw InputError("Vec: dim must be 1, 2 or 3");
    x_.fill(0.0);
    int i = 0;
    for (double v : xs) x_[i++] = v;
  }

  int dim() const { return n_; }
  double operator[](int i) const { return x_[i]; }
  double& operator[](int i) { return x_[i]; }

  Vec& operator+=(const Vec& o) {
    for (int i = 0; i < n_; ++i) x_[i] += o.x_[i];
    return *this;
  }
  Vec& operator-=(const Vec& o) {
    for (int i = 0; i < n_; ++i) x_[i] -= o.x_[i];
    return *this;
  }
  Vec& operator*=(double s) {
    for (int i = 0; i < n_; ++i) x_[i] *= s;
    return *this;
  }

  friend Vec operator+(Vec a, const Vec& b) { return a += b; }
  friend Vec operator-(Vec a, const Vec& b) { return a -= b; }
  friend Vec operator*(double s, Vec a) { return a *= s; }
  friend Vec operator*(Vec a, double s) { return a *= s; }

 private:
  int n_ = 0;
  std::array<double, 3> x_{};
};

inline double dot(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (int i = 0; i < a.dim(); ++i) s += a[i] * b[i];
  return s;
}

inline double inf_norm(const Vec& a) {
  double s = 0.0;
  for (int i = 0; i < a.dim(); ++i) s = std::max(s, std::abs(a[i]));
  return s;
}

inline double l2_norm(const Vec& a) { return std::sqrt(dot(a, a)); }

// Fractional part mapped into [0, 1).
inline double wrap01(double x) {
  double f = x - std::floor(x);
  if (f >= 1.0) f = 0.0;  // guards against floor rounding at negative epsilons
  return f;
}

inline Vec wrap_point(const Vec& x) {
  Vec w(x.dim());
  for (int i = 0; i < x.dim(); ++i) w[i] = wrap01(x[i]);
  return w;
}

// Distance to the nearest integer.
inline double dist_to_integer(double x) {
  return std::abs(x - std::round(x));
}

// Sup-norm distance on the torus (coordinates compared modulo 1).
inline double torus_dist_sup(const Vec& a, const Vec& b) {
  double d = 0.0;
  for (int i = 0; i < a.dim(); ++i) {
    double diff = wrap01(a[i] - b[i]);
    d = std::max(d, std::min(diff, 1.0 - diff));
  }
  return d;
}

}  // namespace flowforms
