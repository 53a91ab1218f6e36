#include "flowforms/presets.hpp"

#include "flowforms/errors.hpp"

namespace flowforms {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr double kOrbitContraction = 0.25;

std::array<int, 3> unit_freq(int axis) {
  std::array<int, 3> k{0, 0, 0};
  k[axis] = 1;
  return k;
}
}  // namespace

TorusFlowSpec preset_zero(int dim) {
  TorusFlowSpec s;
  s.dim = dim;
  s.name = "zero";
  for (int i = 0; i < dim; ++i) s.components.push_back(TrigPoly::zero(dim));
  s.validate();
  return s;
}

TorusFlowSpec preset_linear(int dim) {
  TorusFlowSpec s;
  s.dim = dim;
  s.name = "linear";
  double a = 1.0;
  for (int i = 0; i < dim; ++i) {
    s.components.push_back(TrigPoly::constant(dim, a));
    a *= kGoldenConj;
  }
  s.validate();
  return s;
}

TrigPoly morse_potential(int dim) {
  TrigPoly f(dim);
  for (int i = 0; i < dim; ++i) f.add_term(1.0, unit_freq(i), Basis::Cos);
  return f;
}

TorusFlowSpec preset_morse_gradient(int dim) {
  TorusFlowSpec s;
  s.dim = dim;
  s.name = "morse";
  // -dF/dx_i = 2 pi sin(2 pi x_i)
  for (int i = 0; i < dim; ++i) {
    TrigPoly c(dim);
    c.add_term(kTwoPi, unit_freq(i), Basis::Sin);
    s.components.push_back(c);
  }
  s.validate();
  return s;
}

TorusFlowSpec preset_periodic_orbit(int dim) {
  if (dim < 2) throw InputError("periodic_orbit preset needs dim >= 2");
  TorusFlowSpec s;
  s.dim = dim;
  s.name = "periodic_orbit";
  s.components.push_back(TrigPoly::constant(dim, 1.0));
  for (int i = 1; i < dim; ++i) {
    TrigPoly c(dim);
    c.add_term(-kOrbitContraction, unit_freq(i), Basis::Sin);
    s.components.push_back(c);
  }
  s.validate();
  return s;
}

TorusFlowSpec preset_by_name(const std::string& name, int dim) {
  if (name == "zero") return preset_zero(dim);
  if (name == "linear") return preset_linear(dim);
  if (name == "morse") return preset_morse_gradient(dim);
  if (name == "periodic_orbit") return preset_periodic_orbit(dim);
  throw InputError("unknown preset '" + name +
                   "' (expected zero, linear, morse or periodic_orbit)");
}

ClosedOneForm form_dx(int dim, int axis, double sign) {
  if (axis < 0 || axis >= dim) throw InputError("form_dx: bad axis");
  ClosedOneForm w;
  w.periods = Vec(dim);
  w.periods[axis] = sign;
  w.potential = TrigPoly::zero(dim);
  return w;
}

}  // namespace flowforms
