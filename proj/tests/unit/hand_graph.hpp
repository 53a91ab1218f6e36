#pragma once

#include <algorithm>
#include <vector>

#include "flowforms/flow_graph.hpp"

namespace test_util {

struct E {
  int tail;
  int head;
  double w;
};

// Small hand-built digraph wrapped as a FlowGraph on a 1-d grid.  The
// displacement carries the weight along axis 0, matching the convention of
// the random oracle graphs.
inline flowforms::FlowGraph hand_graph(int n, std::vector<E> edges) {
  flowforms::FlowGraph g;
  g.grid = flowforms::Grid(1, {n, 0, 0});
  g.tau = 2.0;
  g.padding = 1;
  g.samples_per_cell = 1;
  g.integration_step = 0.1;
  std::sort(edges.begin(), edges.end(), [](const E& a, const E& b) {
    return a.tail != b.tail ? a.tail < b.tail : a.head < b.head;
  });
  for (const E& e : edges) {
    flowforms::Edge edge;
    edge.tail = e.tail;
    edge.head = e.head;
    edge.disp = flowforms::Vec(1, e.w);
    edge.weight = e.w;
    g.edges.push_back(edge);
  }
  return g;
}

}  // namespace test_util
