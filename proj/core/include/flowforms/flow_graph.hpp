#pragma once

#include <vector>

#include "flowforms/flow.hpp"
#include "flowforms/grid.hpp"

namespace flowforms {

// One weighted arc of the combinatorial flow map.  `disp` is the unwrapped
// center-to-center displacement of the generating trajectory; around any
// closed walk the displacements sum to the integer homology vector exactly.
struct Edge {
  int tail = 0;
  int head = 0;
  Vec disp;
  double weight = 0.0;
};

// tau-step flow map, dilated by `padding` cells and weighted by a closed
// 1-form.  Weights use cell centers only:
//   w(e) = <periods, disp> + f(tail_center + disp) - f(tail_center),
// so reweighting with the same form is exactly idempotent and weights are a
// function of (edge, form) alone.
struct FlowGraph {
  Grid grid;
  double tau = 0.0;
  int padding = 1;
  int samples_per_cell = 1;
  double integration_step = 0.0;
  std::vector<Edge> edges;  // sorted by (tail, head); unique (tail, head)

  int cell_count() const { return grid.cell_count(); }
};

// Builds the dilated flow graph.  Sample points per cell come from a fixed
// low-discrepancy lattice shared by all cells (offset 0 is the center).
// Duplicate (tail, head) arcs are merged keeping the maximum weight and its
// displacement.  Deterministic for any thread count.
// Throws ConfigError for tau <= 1 or step-bound violations; InputError for
// empty grids or dimension mismatches.
FlowGraph build_flow_graph(const TorusFlowSpec& spec, const ClosedOneForm& form,
                           const Grid& grid, double tau, int samples_per_cell = 1,
                           int padding = 1, int threads = 0);

// Recomputes all weights from stored displacements under a new form; no
// re-integration.  Grid/tau/edges (tails, heads, displacements) unchanged.
FlowGraph reweight(const FlowGraph& graph, const ClosedOneForm& form);

// CSR-style adjacency over a FlowGraph's edge list.
struct Adjacency {
  std::vector<int> start;  // size cells+1, offsets into `order`
  std::vector<int> order;  // edge indices sorted by tail

  static Adjacency of(const FlowGraph& g);
  // Edge index tail->head, or -1.
  int find(const FlowGraph& g, int tail, int head) const;
};

// Default ``near zero'' tolerance for cycle weights:
//   grid spacing * sampled sup|omega| * 2.
double default_theta(const FlowGraph& graph, const ClosedOneForm& form);

}  // namespace flowforms
