#pragma once

#include <functional>
#include <vector>

#include "flowforms/flow_graph.hpp"
#include "flowforms/recurrence.hpp"
#include "flowforms/sampling.hpp"

// Independent reference implementations for cross-checking the library's
// graph analyses on small instances.  Everything here is exhaustive or
// textbook-direct and deliberately shares no code with the main algorithms.
namespace flowforms::oracle {

// Visits every simple directed cycle exactly once (self-loops included), as
// the cell sequence rooted at its smallest cell, with the summed weight.
// Exponential; intended for graphs with at most ~12 cells.
void for_each_simple_cycle(
    const FlowGraph& g,
    const std::function<void(const std::vector<int>&, double)>& fn);

struct ReferenceAnalysis {
  std::vector<int> R;
  std::vector<int> R_xi;
  std::vector<int> C_xi;
  // Max simple-cycle weight through each cell; -inf off cycles, +inf for
  // cells whose mutual-reachability class carries a positive cycle.
  std::vector<double> m;
  bool has_positive_cycle = false;
  // Max weight/length over all simple cycles; NaN when the graph is acyclic.
  double max_mean = 0.0;
  // Same, over cycles meeting the mutual-reachability class of any cell in
  // `restrict` (mirrors the library's component-granularity semantics).
  double max_mean_through(const FlowGraph& g,
                          const std::vector<int>& restrict_cells) const;

  std::vector<std::vector<int>> cycles;
  std::vector<double> cycle_weights;
  std::vector<std::vector<char>> mutual;  // transitive-closure SCC relation
};

ReferenceAnalysis enumerate_reference(const FlowGraph& g, double theta);

// Karp's minimum/maximum cycle mean, run per reachability class.
// NaN when acyclic.
double karp_max_cycle_mean(const FlowGraph& g);

// Floyd-Warshall feasibility of the synthesis difference constraints:
//   g(head)-g(tail) <= -w-epsilon   (an endpoint outside R_xi)
//   g(head)-g(tail) <= -w+theta     (both in R_xi)
//   g(tail)-g(head) <=  w+theta     (both in R_xi, same component)
// Feasible iff no diagonal entry of the closure is negative.
bool constraints_feasible_fw(const FlowGraph& g, const RecurrenceReport& report,
                             double epsilon);

// Random digraph wrapped as a FlowGraph on a 1-d grid with n cells: each
// ordered pair (self-loops included) gets an edge with probability p and an
// integer weight in [wlo, whi].  disp is the weight along axis 0, so
// reweighting with dx_0 reproduces the weights exactly.
FlowGraph random_graph(int n, double p, int wlo, int whi, SplitMix64& rng);

}  // namespace flowforms::oracle
