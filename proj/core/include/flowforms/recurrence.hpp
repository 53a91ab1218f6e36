#pragma once

#include <array>
#include <vector>

#include "flowforms/flow_graph.hpp"

namespace flowforms {

// Closed walk in a FlowGraph: cells[i] -> cells[(i+1) % size] must all be
// edges.  (tail, head) pairs are unique after merging, so the cell sequence
// determines the edges, the weight and the displacement.
struct Cycle {
  std::vector<int> cells;
  double weight = 0.0;
  Vec displacement;

  int length() const { return static_cast<int>(cells.size()); }
  double mean() const { return cells.empty() ? 0.0 : weight / length(); }
};

// Looks up the edges of the closed walk `cells` and fills weight and
// displacement from them.  Throws NotACycleError when an arc is missing.
Cycle make_cycle(const FlowGraph& graph, const std::vector<int>& cells);

struct SccPartition {
  std::vector<int> comp;  // per cell; ids follow a topological order of the
                          // condensation, so id 0 never has an incoming
                          // inter-component edge and edges never decrease ids
  int count = 0;
  std::vector<std::vector<int>> members;  // per component, ascending cells
  std::vector<char> has_cycle;  // size > 1, or single cell with a self-loop
};

SccPartition strongly_connected_components(const FlowGraph& graph);

// Cells lying on some directed cycle (= cells of cycle-bearing components).
std::vector<int> chain_recurrent_cells(const FlowGraph& graph);

struct RecurrenceReport {
  std::vector<int> scc_id;  // per cell
  std::vector<int> R;       // ascending
  std::vector<int> R_xi;    // ascending
  std::vector<int> C_xi;    // ascending; exactly R minus R_xi
  double theta = 0.0;
  // Per cell: max weight of a closed walk through it; -inf off cycles, +inf
  // inside components that carry a positive cycle.
  std::vector<double> m_value;
  std::vector<int> positive_cycle_sccs;   // ascending component ids
  std::vector<Cycle> positive_witnesses;  // parallel to positive_cycle_sccs
  std::vector<Cycle> rxi_witnesses;  // parallel to R_xi: walk through the
                                     // cell with weight >= -theta
};

// Classifies every cell against cycles weighted by the form already baked
// into `graph`:
//   per cycle-bearing component, either some cycle has weight > 0 (recorded
//   with a witness; the whole component joins R_xi), or every closed walk
//   through v has weight m(v) attained by a simple cycle, and v joins R_xi
//   iff m(v) >= -theta.
RecurrenceReport xi_recurrent_cells(const FlowGraph& graph, double theta,
                                    int threads = 0);

// Homology class of a near-closed trajectory.
struct CycleClass {
  int dim = 0;
  std::array<long long, 3> z{0, 0, 0};
  double pairing = 0.0;   // <periods, z>
  double duration = 0.0;
};

// Endpoints must be within `delta` on the torus (sup metric); every
// displacement coordinate must sit within 0.1 of an integer, otherwise the
// rounding would not be canonical.  delta must lie in (0, 0.5).
CycleClass delta_T_cycle_class(const Trajectory& traj, const ClosedOneForm& form,
                               double delta);

}  // namespace flowforms
