#pragma once

#include <array>
#include <string>
#include <vector>

#include "flowforms/vec.hpp"

namespace flowforms {

enum class Basis : int { Sin = 0, Cos = 1 };

// One term c * sin(2*pi*<k,x>) or c * cos(2*pi*<k,x>) with integer
// frequency vector k, hence exactly 1-periodic in every coordinate.
struct TrigTerm {
  double c = 0.0;
  std::array<int, 3> k{0, 0, 0};
  Basis basis = Basis::Cos;
};

// Finite trigonometric polynomial on the torus.  Closed under d/dx_i,
// which is what keeps every derived field/form in the same class.
class TrigPoly {
 public:
  TrigPoly() = default;
  explicit TrigPoly(int dim) : dim_(dim) {
    if (dim < 1 || dim > 3) throw InputError("TrigPoly: dim must be 1, 2 or 3");
  }

  static TrigPoly zero(int dim) { return TrigPoly(dim); }
  static TrigPoly constant(int dim, double c);

  int dim() const { return dim_; }
  const std::vector<TrigTerm>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  TrigPoly& add_term(double c, std::array<int, 3> k, Basis basis);

  double eval(const Vec& x) const;
  // d/dx_axis evaluated pointwise.
  double partial(int axis, const Vec& x) const;
  Vec gradient(const Vec& x) const;
  // d/dx_axis as a TrigPoly (sin<->cos with 2*pi*k_axis factors).
  TrigPoly partial_poly(int axis) const;

  TrigPoly& operator+=(const TrigPoly& o);
  friend TrigPoly operator+(TrigPoly a, const TrigPoly& b) { return a += b; }
  TrigPoly scaled(double s) const;

  // Sum of |coefficients|: cheap uniform bound for sup |p|.
  double coeff_abs_sum() const;
  // Sampled sup over a uniform lattice with `per_axis` points per axis.
  double sampled_sup(int per_axis) const;

 private:
  int dim_ = 0;
  std::vector<TrigTerm> terms_;
};

}  // namespace flowforms
