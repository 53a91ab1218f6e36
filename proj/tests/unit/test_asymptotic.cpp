#include <cmath>
#include <limits>

#include "doctest.h"
#include "flowforms/asymptotic.hpp"
#include "flowforms/presets.hpp"
#include "hand_graph.hpp"

using namespace flowforms;
using test_util::hand_graph;

TEST_CASE("asymptotic cycle of the linear flow") {
  TorusFlowSpec spec = preset_linear();
  AsymptoticCycleEstimate est =
      estimate_asymptotic_cycle(spec, Vec{0.2, 0.7}, 200.0, 0.01);
  CHECK(est.A[0] == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(est.A[1] == doctest::Approx(kGoldenConj).epsilon(1e-9));
  CHECK(est.convergence_gap < 1e-9);
  CHECK(est.t_total == doctest::Approx(200.0));
  CHECK(est.x0[0] == doctest::Approx(0.2));

  CHECK(pair_class(Vec{-1.0, 0.0}, est.A) == doctest::Approx(-1.0).epsilon(1e-9));
  CHECK_THROWS_AS(estimate_asymptotic_cycle(spec, Vec{0.0, 0.0}, 0.5, 0.01),
                  InputError);
  CHECK_THROWS_AS(pair_class(Vec{1.0}, Vec{1.0, 2.0}), InputError);
}

TEST_CASE("asymptotic cycle of the periodic orbit") {
  TorusFlowSpec spec = preset_periodic_orbit();
  AsymptoticCycleEstimate est =
      estimate_asymptotic_cycle(spec, Vec{0.0, 0.25}, 400.0, 0.01);
  CHECK(est.A[0] == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(std::abs(est.A[1]) < 2e-3);  // transient winding dies off
}

TEST_CASE("max cycle mean on hand graphs") {
  FlowGraph g = hand_graph(4, {{0, 1, 1.0},
                               {1, 0, -3.0},
                               {2, 3, 2.0},
                               {3, 2, -1.0}});
  MaxCycleMean a = max_cycle_mean_through(g, {0});
  CHECK(a.mean == doctest::Approx(-1.0).epsilon(1e-9));
  CHECK(a.witness.mean() == doctest::Approx(a.mean).epsilon(1e-12));
  CHECK(make_cycle(g, a.witness.cells).weight ==
        doctest::Approx(a.witness.weight));

  MaxCycleMean b = max_cycle_mean_through(g, {2});
  CHECK(b.mean == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(b.witness.length() == 2);

  // the max over both components
  MaxCycleMean c = max_cycle_mean_through(g, {0, 2});
  CHECK(c.mean == doctest::Approx(0.5).epsilon(1e-9));

  FlowGraph loop = hand_graph(2, {{0, 0, -0.7}, {0, 1, 1.0}});
  MaxCycleMean d = max_cycle_mean_through(loop, {0});
  CHECK(d.mean == doctest::Approx(-0.7).epsilon(1e-9));
  CHECK(d.witness.length() == 1);

  // non-commensurate weights exercise the binary search
  FlowGraph f = hand_graph(2, {{0, 1, 0.3}, {1, 0, -0.25}});
  MaxCycleMean e = max_cycle_mean_through(f, {0});
  CHECK(e.mean == doctest::Approx(0.025).epsilon(1e-9));

  CHECK_THROWS_AS(max_cycle_mean_through(g, {}), InputError);
  CHECK_THROWS_AS(max_cycle_mean_through(loop, {1}), NotACycleError);
}

TEST_CASE("condition checks on a clean split") {
  // C_xi component {0,1} with cycle weight -2; R_xi component {2,3}
  FlowGraph g = hand_graph(4, {{0, 1, 1.0},
                               {1, 0, -3.0},
                               {1, 2, 5.0},
                               {2, 3, 0.0},
                               {3, 2, 0.0}});
  RecurrenceReport rep = xi_recurrent_cells(g, 0.0);
  REQUIRE(rep.C_xi == std::vector<int>{0, 1});

  ConditionReport ii = check_condition_II(g, rep);
  CHECK(ii.condition == Condition::II);
  CHECK(ii.holds);
  CHECK(ii.theta == 0.0);
  CHECK(ii.T == doctest::Approx(2.0));
  CHECK(ii.delta == doctest::Approx(g.padding * g.grid.spacing_max()));

  ConditionReport iii = check_condition_III(g, rep);
  CHECK(iii.holds);
  CHECK(iii.eta == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(iii.eta_per_time == doctest::Approx(0.5).epsilon(1e-9));
  REQUIRE(iii.witness.has_value());
  CHECK(iii.witness->mean() == doctest::Approx(-1.0).epsilon(1e-9));

  ConditionReport iv = check_condition_IV(g, rep);
  CHECK(iv.holds == iii.holds);
}

TEST_CASE("condition II is sharp at weight -1") {
  FlowGraph g = hand_graph(2, {{0, 1, 0.5}, {1, 0, -1.5}});
  RecurrenceReport rep = xi_recurrent_cells(g, 0.0);
  REQUIRE(rep.C_xi == std::vector<int>{0, 1});
  CHECK(check_condition_II(g, rep).holds);  // weight exactly -1

  FlowGraph h = hand_graph(2, {{0, 1, 0.5}, {1, 0, -1.4}});
  RecurrenceReport hrep = xi_recurrent_cells(h, 0.0);
  ConditionReport ii = check_condition_II(h, hrep);
  CHECK(!ii.holds);  // -0.9 > -1
  REQUIRE(ii.witness.has_value());
  CHECK(ii.witness->weight == doctest::Approx(-0.9).epsilon(1e-9));
  // III still holds: the mean is negative even though II fails
  CHECK(check_condition_III(h, hrep).holds);
  CHECK(check_condition_IV(h, hrep).holds);
}

TEST_CASE("conditions reject a C_xi that is not a union of components") {
  // v = 1 keeps a zero self-loop, u = 0 shares its component through a
  // -2 two-cycle: u lands in C_xi, v in R_xi, same component
  FlowGraph g = hand_graph(2, {{0, 1, -1.0}, {1, 0, -1.0}, {1, 1, 0.0}});
  RecurrenceReport rep = xi_recurrent_cells(g, 0.0);
  REQUIRE(rep.R_xi == std::vector<int>{1});
  REQUIRE(rep.C_xi == std::vector<int>{0});
  REQUIRE(rep.scc_id[0] == rep.scc_id[1]);

  CHECK(check_condition_II(g, rep).holds);  // every walk through 0 weighs <= -2
  ConditionReport iii = check_condition_III(g, rep);
  CHECK(!iii.holds);
  CHECK(iii.notes.find("not closed") != std::string::npos);
  CHECK(!check_condition_IV(g, rep).holds);
}

TEST_CASE("conditions fail loudly under a positive cycle") {
  FlowGraph g = hand_graph(3, {{0, 1, 1.0}, {1, 0, -0.5}, {2, 2, -1.0}});
  RecurrenceReport rep = xi_recurrent_cells(g, 0.0);
  REQUIRE(!rep.positive_cycle_sccs.empty());

  for (const ConditionReport& r :
       {check_condition_II(g, rep), check_condition_III(g, rep),
        check_condition_IV(g, rep)}) {
    CHECK(!r.holds);
    REQUIRE(r.witness.has_value());
    CHECK(r.witness->weight > 0.0);
  }
}

TEST_CASE("conditions hold vacuously without C_xi") {
  FlowGraph g = hand_graph(2, {{0, 1, 0.0}, {1, 0, 0.0}});
  RecurrenceReport rep = xi_recurrent_cells(g, 0.0);
  REQUIRE(rep.C_xi.empty());
  CHECK(check_condition_II(g, rep).holds);
  ConditionReport iii = check_condition_III(g, rep);
  CHECK(iii.holds);
  CHECK(std::isinf(iii.eta));
  CHECK(iii.eta > 0.0);
  CHECK(check_condition_IV(g, rep).holds);
}

TEST_CASE("circulation class per unit time") {
  FlowGraph g = hand_graph(2, {{0, 1, 1.0}, {1, 0, -3.0}});
  Cycle c = make_cycle(g, {0, 1});
  Vec a = circulation_asymptotic_cycle(g, c);
  CHECK(a[0] == doctest::Approx(-2.0 / (2.0 * 2.0)));
}
