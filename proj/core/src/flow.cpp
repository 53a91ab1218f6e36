#include "flowforms/flow.hpp"

#include <cmath>
#include <sstream>

#include "flowforms/errors.hpp"

namespace flowforms {

void TorusFlowSpec::validate() const {
  if (dim < 1 || dim > 3) throw InputError("TorusFlowSpec: dim must be 1, 2 or 3");
  if (static_cast<int>(components.size()) != dim)
    throw InputError("TorusFlowSpec: need one component per axis");
  for (const TrigPoly& p : components) {
    if (p.dim() != dim) throw InputError("TorusFlowSpec: component dim mismatch");
  }
}

void ClosedOneForm::validate() const {
  if (periods.dim() < 1 || periods.dim() > 3)
    throw InputError("ClosedOneForm: dim must be 1, 2 or 3");
  if (!potential.empty() && potential.dim() != periods.dim())
    throw InputError("ClosedOneForm: potential dim mismatch");
}

Vec ClosedOneForm::coefficients(const Vec& x) const {
  Vec c = periods;
  if (!potential.empty()) c += potential.gradient(x);
  return c;
}

Vec Trajectory::displacement() const {
  if (points.empty()) throw InputError("Trajectory: empty");
  return points.back() - points.front();
}

Vec eval_vector_field(const TorusFlowSpec& spec, const Vec& x) {
  Vec v(spec.dim);
  for (int i = 0; i < spec.dim; ++i) v[i] = spec.components[i].eval(x);
  return v;
}

double pair_form_with_field(const ClosedOneForm& form, const TorusFlowSpec& spec,
                            const Vec& x) {
  return dot(form.coefficients(x), eval_vector_field(spec, x));
}

double sup_speed(const TorusFlowSpec& spec, int per_axis) {
  spec.validate();
  int total = 1;
  for (int i = 0; i < spec.dim; ++i) total *= per_axis;
  double sup = 0.0;
  Vec x(spec.dim);
  for (int j = 0; j < total; ++j) {
    int r = j;
    for (int i = 0; i < spec.dim; ++i) {
      x[i] = (r % per_axis + 0.5) / per_axis;
      r /= per_axis;
    }
    sup = std::max(sup, l2_norm(eval_vector_field(spec, x)));
  }
  return sup;
}

namespace {

void check_cfl(const TorusFlowSpec& spec, double step, double t_total) {
  if (step <= 0.0) throw ConfigError("integrate: step must be positive");
  if (t_total <= 0.0) throw ConfigError("integrate: t_total must be positive");
  double sup = sup_speed(spec);
  if (step * sup >= 0.25) {
    std::ostringstream os;
    os << "integrate: step*sup|V| = " << step * sup
       << " violates the bound step*sup|V| < 0.25 (sup|V| ~= " << sup
       << "); use step < " << (sup > 0.0 ? 0.25 / sup : step);
    throw ConfigError(os.str());
  }
}

long long step_count(double t_total, double step) {
  long long n = std::llround(t_total / step);
  return n < 1 ? 1 : n;
}

}  // namespace

Vec rk4_step(const TorusFlowSpec& spec, const Vec& x, double h) {
  Vec k1 = eval_vector_field(spec, x);
  Vec k2 = eval_vector_field(spec, x + 0.5 * h * k1);
  Vec k3 = eval_vector_field(spec, x + 0.5 * h * k2);
  Vec k4 = eval_vector_field(spec, x + h * k3);
  return x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

Trajectory integrate_trajectory(const TorusFlowSpec& spec, const Vec& x0,
                                double t_total, double step) {
  spec.validate();
  if (x0.dim() != spec.dim) throw InputError("integrate: x0 dim mismatch");
  check_cfl(spec, step, t_total);
  long long n = step_count(t_total, step);
  Trajectory traj;
  traj.step = step;
  traj.times.reserve(n + 1);
  traj.points.reserve(n + 1);
  Vec x = x0;
  traj.times.push_back(0.0);
  traj.points.push_back(x);
  for (long long i = 1; i <= n; ++i) {
    x = rk4_step(spec, x, step);
    traj.times.push_back(i * step);
    traj.points.push_back(x);
  }
  return traj;
}

Vec flow_endpoint(const TorusFlowSpec& spec, const Vec& x0, double t_total,
                  double step) {
  spec.validate();
  if (x0.dim() != spec.dim) throw InputError("integrate: x0 dim mismatch");
  check_cfl(spec, step, t_total);
  long long n = step_count(t_total, step);
  Vec x = x0;
  for (long long i = 0; i < n; ++i) x = rk4_step(spec, x, step);
  return x;
}

double integrate_form_along(const ClosedOneForm& form, const Trajectory& traj) {
  form.validate();
  if (traj.empty()) throw InputError("integrate_form_along: empty trajectory");
  const Vec& a = traj.points.front();
  const Vec& b = traj.points.back();
  double s = dot(form.periods, b - a);
  if (!form.potential.empty()) s += form.potential.eval(b) - form.potential.eval(a);
  return s;
}

}  // namespace flowforms
