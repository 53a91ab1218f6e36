#pragma once

#include <string>
#include <vector>

#include "flowforms/trig.hpp"
#include "flowforms/vec.hpp"

namespace flowforms {

// Vector field V on T^n = R^n / Z^n, one trig polynomial per component.
struct TorusFlowSpec {
  int dim = 0;
  std::vector<TrigPoly> components;
  std::string name;

  void validate() const;
};

// Closed 1-form  omega = sum_i periods[i] dx_i + df  with trig potential f.
// [omega] in H^1(T^n; R) is exactly `periods`.
struct ClosedOneForm {
  Vec periods;
  TrigPoly potential;

  int dim() const { return periods.dim(); }
  void validate() const;
  // Coefficient vector of omega at x: periods + grad f(x).
  Vec coefficients(const Vec& x) const;
};

// Fixed-step orbit segment in unwrapped (universal cover) coordinates.
struct Trajectory {
  std::vector<double> times;
  std::vector<Vec> points;  // unwrapped
  double step = 0.0;

  bool empty() const { return points.empty(); }
  double duration() const { return times.empty() ? 0.0 : times.back() - times.front(); }
  Vec displacement() const;
};

Vec eval_vector_field(const TorusFlowSpec& spec, const Vec& x);

// iota_V(omega)(x) = <periods + grad f(x), V(x)>.
double pair_form_with_field(const ClosedOneForm& form, const TorusFlowSpec& spec,
                            const Vec& x);

// Sampled sup of |V| (Euclidean) over a uniform lattice; used for the
// step-size bound step * sup|V| < 0.25.
double sup_speed(const TorusFlowSpec& spec, int per_axis = 24);

// Classical RK4 with fixed step in unwrapped coordinates.
// Throws ConfigError when step * sup|V| >= 0.25.
Trajectory integrate_trajectory(const TorusFlowSpec& spec, const Vec& x0,
                                double t_total, double step);

// Endpoint-only integration (no path storage); same stepping rule.
Vec flow_endpoint(const TorusFlowSpec& spec, const Vec& x0, double t_total,
                  double step);

// One RK4 step of size h.  No validation: callers that loop over many
// start points are expected to check the step bound once themselves.
Vec rk4_step(const TorusFlowSpec& spec, const Vec& x, double h);

// int_gamma omega = <periods, x(T)-x(0)> + f(x(T)) - f(x(0)).
double integrate_form_along(const ClosedOneForm& form, const Trajectory& traj);

}  // namespace flowforms
