#pragma once

#include <optional>
#include <vector>

#include "flowforms/flow_graph.hpp"
#include "flowforms/recurrence.hpp"

namespace flowforms::detail {

// Relaxation guard: improvements at or below this are treated as float noise,
// so cycles whose |weight| never exceeds it are considered zero-weight.
inline constexpr double kRelaxGuard = 1e-11;

// Weighted digraph with contiguous local ids, remembering the global node
// and edge ids it was induced from.
struct LocalGraph {
  int n = 0;
  std::vector<int> tails, heads;
  std::vector<double> weights;
  std::vector<int> global_node;   // local node -> FlowGraph cell id
  std::vector<int> global_edge;   // local edge -> FlowGraph edge index
  std::vector<int> start, order;  // CSR by tail, built by finalize()

  int edge_count() const { return static_cast<int>(tails.size()); }
  void add_edge(int u, int v, double w, int gedge);
  void finalize();
};

// Subgraph induced by `nodes` (edges with both endpoints inside).
LocalGraph induced_subgraph(const FlowGraph& g, const std::vector<int>& nodes);

// Some cycle with sum(w(e) - shift) > guard, as local edge positions in
// forward order; nullopt when none exists.  Bellman-Ford negative-cycle
// detection on the negated shifted weights.
std::optional<std::vector<int>> positive_cycle(const LocalGraph& g,
                                               double shift = 0.0,
                                               double guard = kRelaxGuard);

// Maximum-weight closed walk through each node, for graphs without positive
// cycles (where it is attained by a simple cycle: any closed walk splits into
// simple cycles of weight <= 0, so dropping the ones avoiding v only helps).
// Johnson-style: Bellman-Ford potentials on the negated graph, then one
// Dijkstra per node.  Values are exact when every cycle weight is either
// exactly representable or below -guard; noise cycles inside (0, guard]
// perturb results by at most n*guard.
class CycleAnalysis {
 public:
  explicit CycleAnalysis(const LocalGraph& g, int threads = 0);

  // -inf when v lies on no cycle.
  double m(int v) const { return m_[static_cast<size_t>(v)]; }
  const std::vector<double>& values() const { return m_; }

  // Simple cycle attaining m(v), as local edge positions in forward order
  // starting and ending at v; empty when m(v) = -inf.
  std::vector<int> best_cycle(int v) const;

 private:
  const LocalGraph& g_;
  std::vector<double> phi_;
  std::vector<double> m_;
};

// Fewest-edges path from -> to as forward local edge positions; nullopt when
// unreachable.  from == to yields the empty path.
std::optional<std::vector<int>> bfs_path(const LocalGraph& g, int from, int to);

// Same nodes and edge positions with every edge direction flipped.
LocalGraph reversed(const LocalGraph& g);

// BFS tree from `source`: per node the edge position that discovered it,
// -1 for the source and unreachable nodes.
std::vector<int> bfs_tree(const LocalGraph& g, int source);

double path_weight(const LocalGraph& g, const std::vector<int>& edges);

// Closed walk (or open path; the caller knows which) from local edge
// positions, with weight and displacement summed from the global edges.
Cycle to_cycle(const FlowGraph& g, const LocalGraph& lg,
               const std::vector<int>& local_edges);

}  // namespace flowforms::detail
