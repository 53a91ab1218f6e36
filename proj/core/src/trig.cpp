#include "flowforms/trig.hpp"

#include <cmath>

namespace flowforms {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

TrigPoly TrigPoly::constant(int dim, double c) {
  TrigPoly p(dim);
  if (c != 0.0) p.add_term(c, {0, 0, 0}, Basis::Cos);
  return p;
}

TrigPoly& TrigPoly::add_term(double c, std::array<int, 3> k, Basis basis) {
  for (int i = dim_; i < 3; ++i) {
    if (k[i] != 0) throw InputError("TrigTerm: frequency set beyond dim");
  }
  if (basis == Basis::Sin && k == std::array<int, 3>{0, 0, 0}) {
    // sin(0) == 0: keep the representation free of dead terms.
    return *this;
  }
  if (c != 0.0) terms_.push_back(TrigTerm{c, k, basis});
  return *this;
}

double TrigPoly::eval(const Vec& x) const {
  double s = 0.0;
  for (const TrigTerm& t : terms_) {
    double phase = 0.0;
    for (int i = 0; i < dim_; ++i) phase += t.k[i] * x[i];
    phase *= kTwoPi;
    s += t.c * (t.basis == Basis::Sin ? std::sin(phase) : std::cos(phase));
  }
  return s;
}

double TrigPoly::partial(int axis, const Vec& x) const {
  if (axis < 0 || axis >= dim_) throw InputError("TrigPoly::partial: bad axis");
  double s = 0.0;
  for (const TrigTerm& t : terms_) {
    if (t.k[axis] == 0) continue;
    double phase = 0.0;
    for (int i = 0; i < dim_; ++i) phase += t.k[i] * x[i];
    phase *= kTwoPi;
    double f = kTwoPi * t.k[axis] * t.c;
    s += t.basis == Basis::Sin ? f * std::cos(phase) : -f * std::sin(phase);
  }
  return s;
}

Vec TrigPoly::gradient(const Vec& x) const {
  Vec g(dim_);
  for (int i = 0; i < dim_; ++i) g[i] = partial(i, x);
  return g;
}

TrigPoly TrigPoly::partial_poly(int axis) const {
  if (axis < 0 || axis >= dim_) throw InputError("TrigPoly::partial_poly: bad axis");
  TrigPoly d(dim_);
  for (const TrigTerm& t : terms_) {
    if (t.k[axis] == 0) continue;
    double f = kTwoPi * t.k[axis] * t.c;
    if (t.basis == Basis::Sin) {
      d.add_term(f, t.k, Basis::Cos);
    } else {
      d.add_term(-f, t.k, Basis::Sin);
    }
  }
  return d;
}

TrigPoly& TrigPoly::operator+=(const TrigPoly& o) {
  if (o.dim_ != dim_) throw InputError("TrigPoly: dimension mismatch in +");
  terms_.insert(terms_.end(), o.terms_.begin(), o.terms_.end());
  return *this;
}

TrigPoly TrigPoly::scaled(double s) const {
  TrigPoly p(dim_);
  if (s == 0.0) return p;
  p.terms_ = terms_;
  for (TrigTerm& t : p.terms_) t.c *= s;
  return p;
}

double TrigPoly::coeff_abs_sum() const {
  double s = 0.0;
  for (const TrigTerm& t : terms_) s += std::abs(t.c);
  return s;
}

double TrigPoly::sampled_sup(int per_axis) const {
  if (per_axis < 1) throw InputError("sampled_sup: per_axis must be >= 1");
  double sup = 0.0;
  int total = 1;
  for (int i = 0; i < dim_; ++i) total *= per_axis;
  Vec x(dim_);
  for (int j = 0; j < total; ++j) {
    int r = j;
    for (int i = 0; i < dim_; ++i) {
      x[i] = (r % per_axis + 0.5) / per_axis;
      r /= per_axis;
    }
    sup = std::max(sup, std::abs(eval(x)));
  }
  return sup;
}

}  // namespace flowforms
