#include <cmath>
#include <limits>

#include "doctest.h"
#include "flowforms/recurrence.hpp"
#include "hand_graph.hpp"

using namespace flowforms;
using test_util::hand_graph;

TEST_CASE("strongly connected components in topological order") {
  // {0,1} -> {2,3}, plus the isolated cell 4
  FlowGraph g = hand_graph(5, {{0, 1, 1.0},
                               {1, 0, -3.0},
                               {1, 2, 5.0},
                               {2, 3, 0.0},
                               {3, 2, 0.0}});
  SccPartition scc = strongly_connected_components(g);
  CHECK(scc.count == 3);
  CHECK(scc.comp[0] == scc.comp[1]);
  CHECK(scc.comp[2] == scc.comp[3]);
  CHECK(scc.comp[0] != scc.comp[2]);
  CHECK(scc.comp[4] != scc.comp[0]);
  CHECK(scc.comp[4] != scc.comp[2]);
  // edges never decrease component ids
  for (const Edge& e : g.edges) CHECK(scc.comp[e.tail] <= scc.comp[e.head]);
  CHECK(scc.comp[0] < scc.comp[2]);

  CHECK(scc.has_cycle[static_cast<size_t>(scc.comp[0])]);
  CHECK(scc.has_cycle[static_cast<size_t>(scc.comp[2])]);
  CHECK(!scc.has_cycle[static_cast<size_t>(scc.comp[4])]);
  CHECK(scc.members[static_cast<size_t>(scc.comp[0])] == std::vector<int>{0, 1});

  CHECK(chain_recurrent_cells(g) == std::vector<int>{0, 1, 2, 3});

  // a self-loop makes a singleton component cycle-bearing
  FlowGraph h = hand_graph(2, {{0, 0, -1.0}});
  SccPartition hs = strongly_connected_components(h);
  CHECK(hs.has_cycle[static_cast<size_t>(hs.comp[0])]);
  CHECK(!hs.has_cycle[static_cast<size_t>(hs.comp[1])]);
  CHECK(chain_recurrent_cells(h) == std::vector<int>{0});
}

TEST_CASE("make_cycle validates arcs") {
  FlowGraph g = hand_graph(3, {{0, 1, 1.0}, {1, 0, -3.0}, {2, 2, 0.5}});
  Cycle c = make_cycle(g, {0, 1});
  CHECK(c.length() == 2);
  CHECK(c.weight == doctest::Approx(-2.0));
  CHECK(c.mean() == doctest::Approx(-1.0));
  CHECK(c.displacement[0] == doctest::Approx(-2.0));

  Cycle loop = make_cycle(g, {2});
  CHECK(loop.weight == doctest::Approx(0.5));
  CHECK(loop.length() == 1);

  CHECK_THROWS_AS(make_cycle(g, {0, 2}), NotACycleError);
  CHECK_THROWS_AS(make_cycle(g, {1}), NotACycleError);
}

TEST_CASE("xi recurrence splits by the theta band") {
  FlowGraph g = hand_graph(5, {{0, 1, 1.0},
                               {1, 0, -3.0},
                               {1, 2, 5.0},
                               {2, 3, 0.0},
                               {3, 2, 0.0}});
  RecurrenceReport rep = xi_recurrent_cells(g, 0.0);
  CHECK(rep.theta == 0.0);
  CHECK(rep.R == std::vector<int>{0, 1, 2, 3});
  CHECK(rep.R_xi == std::vector<int>{2, 3});
  CHECK(rep.C_xi == std::vector<int>{0, 1});
  CHECK(rep.m_value[0] == doctest::Approx(-2.0));
  CHECK(rep.m_value[1] == doctest::Approx(-2.0));
  CHECK(rep.m_value[2] == doctest::Approx(0.0));
  CHECK(rep.m_value[3] == doctest::Approx(0.0));
  CHECK(std::isinf(rep.m_value[4]));
  CHECK(rep.m_value[4] < 0.0);
  CHECK(rep.positive_cycle_sccs.empty());

  REQUIRE(rep.rxi_witnesses.size() == 2);
  for (size_t i = 0; i < rep.rxi_witnesses.size(); ++i) {
    const Cycle& w = rep.rxi_witnesses[i];
    Cycle rebuilt = make_cycle(g, w.cells);  // must be a genuine closed walk
    CHECK(rebuilt.weight == doctest::Approx(w.weight));
    CHECK(w.weight >= -1e-12);
    bool through = false;
    for (int c : w.cells) through = through || c == rep.R_xi[i];
    CHECK(through);
  }

  // theta wide enough to absorb the -2 cycle
  RecurrenceReport wide = xi_recurrent_cells(g, 2.0);
  CHECK(wide.R_xi == std::vector<int>{0, 1, 2, 3});
  CHECK(wide.C_xi.empty());
  RecurrenceReport narrow = xi_recurrent_cells(g, 1.9999);
  CHECK(narrow.R_xi == std::vector<int>{2, 3});
}

TEST_CASE("positive cycles fold their component into R_xi") {
  FlowGraph g = hand_graph(4, {{0, 1, 1.0},
                               {1, 0, -0.5},
                               {1, 2, -1.0},
                               {2, 3, 0.0},
                               {3, 2, 0.0}});
  RecurrenceReport rep = xi_recurrent_cells(g, 0.0);
  CHECK(rep.R_xi == std::vector<int>{0, 1, 2, 3});
  CHECK(rep.C_xi.empty());
  REQUIRE(rep.positive_cycle_sccs.size() == 1);
  CHECK(rep.positive_cycle_sccs[0] == rep.scc_id[0]);
  REQUIRE(rep.positive_witnesses.size() == 1);
  const Cycle& w = rep.positive_witnesses[0];
  CHECK(w.weight > 0.0);
  CHECK(make_cycle(g, w.cells).weight == doctest::Approx(w.weight));
  CHECK(std::isinf(rep.m_value[0]));
  CHECK(rep.m_value[0] > 0.0);
  CHECK(rep.m_value[2] == doctest::Approx(0.0));

  // every folded member still carries a walk witness clearing -theta
  REQUIRE(rep.rxi_witnesses.size() == 4);
  for (const Cycle& wit : rep.rxi_witnesses) {
    CHECK(wit.weight >= -1e-12);
    CHECK(make_cycle(g, wit.cells).weight == doctest::Approx(wit.weight));
  }
}

TEST_CASE("m values see closed walks, not only simple cycles") {
  // best walk through 0 chains both loops of the figure eight
  FlowGraph g = hand_graph(3, {{0, 1, 2.0},
                               {1, 0, -3.0},
                               {0, 2, 1.0},
                               {2, 0, -1.5}});
  RecurrenceReport rep = xi_recurrent_cells(g, 10.0);
  CHECK(rep.m_value[0] == doctest::Approx(-0.5));  // the better loop alone
  CHECK(rep.m_value[1] == doctest::Approx(-1.0));
  CHECK(rep.m_value[2] == doctest::Approx(-0.5));
  CHECK(rep.R_xi == std::vector<int>{0, 1, 2});
}

TEST_CASE("delta-T cycle class rounds the displacement") {
  ClosedOneForm form;
  form.periods = Vec{-1.0, 2.0};
  form.potential = TrigPoly(2);

  Trajectory traj;
  traj.step = 1.0;
  traj.times = {0.0, 1.0, 2.0};
  traj.points = {Vec{0.1, 0.2}, Vec{0.6, 0.7}, Vec{1.08, 1.22}};

  CycleClass cc = delta_T_cycle_class(traj, form, 0.25);
  CHECK(cc.dim == 2);
  CHECK(cc.z[0] == 1);
  CHECK(cc.z[1] == 1);
  CHECK(cc.pairing == doctest::Approx(1.0));
  CHECK(cc.duration == doctest::Approx(2.0));

  // endpoints too far apart for the requested delta
  CHECK_THROWS_AS(delta_T_cycle_class(traj, form, 0.01), NotACycleError);

  // displacement not close enough to the integer lattice
  Trajectory amb;
  amb.step = 1.0;
  amb.times = {0.0, 1.0};
  amb.points = {Vec{0.0, 0.0}, Vec{0.85, 0.04}};
  CHECK_THROWS_AS(delta_T_cycle_class(amb, form, 0.2), AmbiguityError);

  CHECK_THROWS_AS(delta_T_cycle_class(traj, form, 0.6), InputError);
  CHECK_THROWS_AS(delta_T_cycle_class(traj, form, 0.0), InputError);
}
