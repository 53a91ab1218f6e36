#include <cmath>

#include "doctest.h"
#include "flowforms/flow.hpp"
#include "flowforms/presets.hpp"

using namespace flowforms;

TEST_CASE("linear preset integrates exactly") {
  TorusFlowSpec spec = preset_linear();
  Vec v = eval_vector_field(spec, Vec{0.42, 0.87});
  CHECK(v[0] == doctest::Approx(1.0));
  CHECK(v[1] == doctest::Approx(kGoldenConj));

  Vec x0{0.1, 0.9};
  Trajectory traj = integrate_trajectory(spec, x0, 10.0, 0.01);
  CHECK(traj.points.size() == 1001);
  CHECK(traj.times.size() == traj.points.size());
  CHECK(traj.step == doctest::Approx(0.01));
  CHECK(traj.duration() == doctest::Approx(10.0));
  // constant field: RK4 is exact up to accumulated rounding
  CHECK(traj.points.back()[0] == doctest::Approx(x0[0] + 10.0).epsilon(1e-11));
  CHECK(traj.points.back()[1] ==
        doctest::Approx(x0[1] + 10.0 * kGoldenConj).epsilon(1e-11));
  Vec d = traj.displacement();
  CHECK(d[0] == doctest::Approx(10.0).epsilon(1e-11));

  CHECK(sup_speed(spec) ==
        doctest::Approx(std::sqrt(1.0 + kGoldenConj * kGoldenConj)).epsilon(1e-12));
}

TEST_CASE("step bound is enforced") {
  TorusFlowSpec spec = preset_linear();
  // |V| ~ 1.176, so step 0.25 violates step * sup|V| < 0.25
  CHECK_THROWS_AS(integrate_trajectory(spec, Vec{0.0, 0.0}, 1.0, 0.25), ConfigError);
  CHECK_THROWS_AS(flow_endpoint(spec, Vec{0.0, 0.0}, 1.0, 0.25), ConfigError);
  CHECK_NOTHROW(flow_endpoint(spec, Vec{0.0, 0.0}, 1.0, 0.05));
}

TEST_CASE("endpoint integration matches the stored trajectory") {
  TorusFlowSpec spec = preset_morse_gradient();
  Vec x0{0.3, 0.4};
  Trajectory traj = integrate_trajectory(spec, x0, 1.0, 0.01);
  Vec end = flow_endpoint(spec, x0, 1.0, 0.01);
  CHECK(end[0] == doctest::Approx(traj.points.back()[0]).epsilon(1e-13));
  CHECK(end[1] == doctest::Approx(traj.points.back()[1]).epsilon(1e-13));
}

TEST_CASE("rk4 shows fourth order step-halving behaviour") {
  TorusFlowSpec spec = preset_morse_gradient();
  Vec x0{0.27, 0.63};
  Vec ref = flow_endpoint(spec, x0, 0.5, 0.0003125);
  Vec e1 = flow_endpoint(spec, x0, 0.5, 0.02) - ref;
  Vec e2 = flow_endpoint(spec, x0, 0.5, 0.01) - ref;
  double r = inf_norm(e1) / inf_norm(e2);
  CHECK(r > 8.0);
  CHECK(r < 32.0);
}

TEST_CASE("morse preset is the negative potential gradient") {
  TorusFlowSpec spec = preset_morse_gradient();
  TrigPoly f = morse_potential();
  Vec xs[] = {Vec{0.12, 0.77}, Vec{0.5, 0.5}, Vec{0.9, 0.31}};
  for (const Vec& x : xs) {
    Vec v = eval_vector_field(spec, x);
    Vec g = f.gradient(x);
    CHECK(v[0] == doctest::Approx(-g[0]).epsilon(1e-13));
    CHECK(v[1] == doctest::Approx(-g[1]).epsilon(1e-13));
  }
  // fixed point at the attractor
  Vec v = eval_vector_field(spec, Vec{0.5, 0.5});
  CHECK(inf_norm(v) == doctest::Approx(0.0));
}

TEST_CASE("periodic orbit preset contracts onto the circle") {
  TorusFlowSpec spec = preset_periodic_orbit();
  Vec end = flow_endpoint(spec, Vec{0.0, 0.25}, 5.0, 0.01);
  CHECK(std::abs(end[0] - 5.0) < 1e-9);          // unit speed along x1
  CHECK(dist_to_integer(end[1]) < 1e-3);         // x2 pulled onto 0
}

TEST_CASE("form integration telescopes the potential") {
  TorusFlowSpec spec = preset_linear();
  ClosedOneForm form;
  form.periods = Vec{-1.0, 0.5};
  form.potential = TrigPoly(2);
  form.potential.add_term(0.3, {0, 1, 0}, Basis::Cos);
  form.validate();

  Trajectory traj = integrate_trajectory(spec, Vec{0.2, 0.6}, 7.0, 0.01);
  Vec d = traj.displacement();
  double expected = dot(form.periods, d) + form.potential.eval(traj.points.back()) -
                    form.potential.eval(traj.points.front());
  CHECK(integrate_form_along(form, traj) == doctest::Approx(expected).epsilon(1e-12));

  // iota_V(omega) for the constant field
  double pairing = pair_form_with_field(form, spec, Vec{0.0, 0.0});
  Vec coef = form.coefficients(Vec{0.0, 0.0});
  Vec v = eval_vector_field(spec, Vec{0.0, 0.0});
  CHECK(pairing == doctest::Approx(dot(coef, v)).epsilon(1e-13));
}

TEST_CASE("spec and form validation") {
  TorusFlowSpec bad;
  bad.dim = 2;
  bad.components.push_back(TrigPoly(2));
  CHECK_THROWS_AS(bad.validate(), InputError);  // one component per axis

  ClosedOneForm f;
  f.periods = Vec{1.0, 0.0};
  f.potential = TrigPoly(1);
  f.potential.add_term(1.0, {1, 0, 0}, Basis::Sin);
  CHECK_THROWS_AS(f.validate(), InputError);  // potential dim mismatch

  CHECK_THROWS_AS(preset_by_name("unknown"), InputError);
  CHECK(preset_by_name("periodic_orbit").name == preset_periodic_orbit().name);

  ClosedOneForm dx1 = form_dx(2, 0, -1.0);
  CHECK(dx1.periods[0] == doctest::Approx(-1.0));
  CHECK(dx1.periods[1] == 0.0);
  CHECK(dx1.potential.empty());
}
