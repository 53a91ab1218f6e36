#include <cmath>
#include <numbers>

#include "doctest.h"
#include "flowforms/trig.hpp"
#include "flowforms/vec.hpp"

using namespace flowforms;

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

TEST_CASE("vec arithmetic and norms") {
  Vec a{1.0, -2.0};
  Vec b{0.5, 4.0};
  Vec c = a + b;
  CHECK(c[0] == doctest::Approx(1.5));
  CHECK(c[1] == doctest::Approx(2.0));
  c -= a;
  CHECK(c[0] == doctest::Approx(0.5));
  CHECK(c[1] == doctest::Approx(4.0));
  CHECK(dot(a, b) == doctest::Approx(1.0 * 0.5 - 2.0 * 4.0));
  CHECK(inf_norm(a) == doctest::Approx(2.0));
  CHECK(l2_norm(Vec{3.0, 4.0}) == doctest::Approx(5.0));
  CHECK((2.0 * a)[1] == doctest::Approx(-4.0));
  CHECK_THROWS_AS(Vec(0), InputError);
  CHECK_THROWS_AS(Vec(4), InputError);
}

TEST_CASE("torus wrapping helpers") {
  CHECK(wrap01(0.25) == doctest::Approx(0.25));
  CHECK(wrap01(-0.25) == doctest::Approx(0.75));
  CHECK(wrap01(3.0) == 0.0);
  CHECK(wrap01(-1e-18) == 0.0);  // floor rounding guard
  CHECK(dist_to_integer(0.9) == doctest::Approx(0.1));
  CHECK(dist_to_integer(-0.4) == doctest::Approx(0.4));
  CHECK(dist_to_integer(2.0) == 0.0);

  Vec p{0.95, 0.1};
  Vec q{0.05, 0.9};
  CHECK(torus_dist_sup(p, q) == doctest::Approx(0.2));
  CHECK(torus_dist_sup(p, p) == 0.0);
  Vec w = wrap_point(Vec{1.25, -0.25});
  CHECK(w[0] == doctest::Approx(0.25));
  CHECK(w[1] == doctest::Approx(0.75));
}

TEST_CASE("trig polynomial evaluation matches the closed form") {
  TrigPoly p(2);
  p.add_term(0.5, {1, 0, 0}, Basis::Cos);
  p.add_term(-1.5, {1, 2, 0}, Basis::Sin);
  p += TrigPoly::constant(2, 2.0);

  Vec pts[] = {Vec{0.0, 0.0}, Vec{0.13, 0.71}, Vec{0.5, 0.25}, Vec{0.99, 0.01}};
  for (const Vec& x : pts) {
    double ref = 2.0 + 0.5 * std::cos(kTwoPi * x[0]) -
                 1.5 * std::sin(kTwoPi * (x[0] + 2.0 * x[1]));
    CHECK(p.eval(x) == doctest::Approx(ref).epsilon(1e-12));
  }
  CHECK(p.coeff_abs_sum() == doctest::Approx(4.0));
}

TEST_CASE("trig partials agree with central differences") {
  TrigPoly p(3);
  p.add_term(0.8, {1, 0, 0}, Basis::Cos);
  p.add_term(0.3, {2, -1, 0}, Basis::Sin);
  p.add_term(-0.45, {1, 1, 3}, Basis::Cos);

  const double h = 1e-5;
  Vec xs[] = {Vec{0.1, 0.2, 0.3}, Vec{0.7, 0.45, 0.05}, Vec{0.33, 0.89, 0.61}};
  for (const Vec& x : xs) {
    for (int axis = 0; axis < 3; ++axis) {
      Vec xp = x, xm = x;
      xp[axis] += h;
      xm[axis] -= h;
      double fd = (p.eval(xp) - p.eval(xm)) / (2.0 * h);
      CHECK(p.partial(axis, x) == doctest::Approx(fd).epsilon(1e-6));
      CHECK(p.partial_poly(axis).eval(x) ==
            doctest::Approx(p.partial(axis, x)).epsilon(1e-13));
      CHECK(p.gradient(x)[axis] == p.partial(axis, x));
    }
  }
}

TEST_CASE("trig term bookkeeping") {
  TrigPoly p(1);
  p.add_term(0.0, {1, 0, 0}, Basis::Cos);   // dropped
  p.add_term(2.0, {0, 0, 0}, Basis::Sin);   // sin(0) == 0, dropped
  CHECK(p.empty());
  CHECK_THROWS_AS(p.add_term(1.0, {0, 1, 0}, Basis::Cos), InputError);

  p.add_term(1.0, {1, 0, 0}, Basis::Sin);
  TrigPoly q(2);
  q.add_term(1.0, {0, 1, 0}, Basis::Cos);
  CHECK_THROWS_AS(p += q, InputError);

  TrigPoly s = p.scaled(-3.0);
  CHECK(s.eval(Vec{0.25}) == doctest::Approx(-3.0));
  CHECK(p.eval(Vec{0.25}) == doctest::Approx(1.0));

  // sampled sup scans cell centers; the best center for cos sits at 1/16
  TrigPoly c(2);
  c.add_term(0.7, {1, 0, 0}, Basis::Cos);
  CHECK(c.sampled_sup(8) == doctest::Approx(0.7 * std::cos(std::numbers::pi / 8)));
  CHECK(c.sampled_sup(401) == doctest::Approx(0.7).epsilon(1e-4));
  CHECK(TrigPoly::constant(2, -1.25).eval(Vec{0.9, 0.9}) == doctest::Approx(-1.25));
}
