#include "weighted_cycles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

#include "flowforms/parallel.hpp"

namespace flowforms::detail {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Dijkstra on nonnegative reduced weights red(e) = -w(e) + phi[tail] - phi[head]
// (clamped at 0).  Fills dist (reduced) and optionally predecessor edges.
void dijkstra_reduced(const LocalGraph& g, const std::vector<double>& phi,
                      int source, std::vector<double>& dist,
                      std::vector<int>* pred) {
  const size_t n = static_cast<size_t>(g.n);
  dist.assign(n, kInf);
  if (pred) pred->assign(n, -1);
  dist[static_cast<size_t>(source)] = 0.0;
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
  heap.push({0.0, source});
  while (!heap.empty()) {
    auto [d, u] = heap.top();
    heap.pop();
    if (d > dist[static_cast<size_t>(u)]) continue;
    for (int k = g.start[static_cast<size_t>(u)];
         k < g.start[static_cast<size_t>(u) + 1]; ++k) {
      const int e = g.order[static_cast<size_t>(k)];
      const int v = g.heads[static_cast<size_t>(e)];
      const double red = std::max(
          0.0, -g.weights[static_cast<size_t>(e)] +
                   phi[static_cast<size_t>(u)] - phi[static_cast<size_t>(v)]);
      const double nd = d + red;
      if (nd < dist[static_cast<size_t>(v)]) {
        dist[static_cast<size_t>(v)] = nd;
        if (pred) (*pred)[static_cast<size_t>(v)] = e;
        heap.push({nd, v});
      }
    }
  }
}

}  // namespace

void LocalGraph::add_edge(int u, int v, double w, int gedge) {
  tails.push_back(u);
  heads.push_back(v);
  weights.push_back(w);
  global_edge.push_back(gedge);
}

void LocalGraph::finalize() {
  const size_t nn = static_cast<size_t>(n);
  start.assign(nn + 1, 0);
  for (int t : tails) ++start[static_cast<size_t>(t) + 1];
  for (size_t i = 0; i < nn; ++i) start[i + 1] += start[i];
  order.resize(tails.size());
  std::vector<int> cursor(start.begin(), start.end() - 1);
  for (int e = 0; e < edge_count(); ++e)
    order[static_cast<size_t>(cursor[tails[static_cast<size_t>(e)]]++)] = e;
}

LocalGraph induced_subgraph(const FlowGraph& g, const std::vector<int>& nodes) {
  LocalGraph lg;
  lg.n = static_cast<int>(nodes.size());
  lg.global_node = nodes;
  std::vector<int> local_of(static_cast<size_t>(g.cell_count()), -1);
  for (int i = 0; i < lg.n; ++i)
    local_of[static_cast<size_t>(nodes[static_cast<size_t>(i)])] = i;
  for (int e = 0; e < static_cast<int>(g.edges.size()); ++e) {
    const Edge& ed = g.edges[static_cast<size_t>(e)];
    const int lt = local_of[static_cast<size_t>(ed.tail)];
    const int lh = local_of[static_cast<size_t>(ed.head)];
    if (lt >= 0 && lh >= 0) lg.add_edge(lt, lh, ed.weight, e);
  }
  lg.finalize();
  return lg;
}

namespace {

// Collects the cycle that `inside` lies on in the functional graph
// x -> tail(pred[x]), as forward edge positions.
std::vector<int> collect_pred_cycle(const LocalGraph& g,
                                    const std::vector<int>& pred, int inside) {
  std::vector<int> edges;
  int y = inside;
  do {
    const int e = pred[static_cast<size_t>(y)];
    edges.push_back(e);
    y = g.tails[static_cast<size_t>(e)];
  } while (y != inside);
  std::reverse(edges.begin(), edges.end());
  return edges;
}

// Walks x -> tail(pred[x]) from `from`; returns a node on a cycle of the
// functional predecessor graph, or -1.  `color` carries stamps across calls
// so repeated scans stay linear overall.
int pred_cycle_node(const LocalGraph& g, const std::vector<int>& pred,
                    std::vector<int>& color, int from) {
  int x = from;
  const int my_stamp = from + 1;
  while (x >= 0 && color[static_cast<size_t>(x)] == 0) {
    color[static_cast<size_t>(x)] = my_stamp;
    const int e = pred[static_cast<size_t>(x)];
    x = e < 0 ? -1 : g.tails[static_cast<size_t>(e)];
  }
  if (x >= 0 && color[static_cast<size_t>(x)] == my_stamp) return x;
  return -1;
}

}  // namespace

std::optional<std::vector<int>> positive_cycle(const LocalGraph& g,
                                               double shift, double guard) {
  const size_t n = static_cast<size_t>(g.n);
  if (n == 0 || g.edge_count() == 0) return std::nullopt;
  std::vector<double> dist(n, 0.0);
  std::vector<int> pred(n, -1);

  // Bellman-Ford from a virtual source (all-zero start) on negated shifted
  // weights; sustained relaxation past n passes requires a cycle of negated
  // weight < -guard, i.e. a shifted-positive cycle.
  bool relaxed = true;
  for (int pass = 0; pass < g.n && relaxed; ++pass) {
    relaxed = false;
    for (int e = 0; e < g.edge_count(); ++e) {
      const size_t u = static_cast<size_t>(g.tails[static_cast<size_t>(e)]);
      const size_t v = static_cast<size_t>(g.heads[static_cast<size_t>(e)]);
      const double wn = shift - g.weights[static_cast<size_t>(e)];
      if (dist[u] + wn < dist[v] - guard) {
        dist[v] = dist[u] + wn;
        pred[v] = e;
        relaxed = true;
      }
    }
  }
  if (!relaxed) return std::nullopt;

  int candidate = -1;
  for (int e = 0; e < g.edge_count(); ++e) {
    const size_t u = static_cast<size_t>(g.tails[static_cast<size_t>(e)]);
    const size_t v = static_cast<size_t>(g.heads[static_cast<size_t>(e)]);
    const double wn = shift - g.weights[static_cast<size_t>(e)];
    if (dist[u] + wn < dist[v] - guard) {
      dist[v] = dist[u] + wn;
      pred[v] = e;
      candidate = static_cast<int>(v);
    }
  }
  if (candidate < 0) return std::nullopt;

  // Any cycle of the predecessor graph sums to negated weight <= -guard, so
  // it is a genuine shifted-positive cycle.  Look from the candidate first,
  // then from every node (the predecessor graph is functional, so the scan
  // is linear).
  std::vector<int> color(n, 0);
  int inside = pred_cycle_node(g, pred, color, candidate);
  if (inside < 0) {
    std::fill(color.begin(), color.end(), 0);
    for (int s = 0; s < g.n && inside < 0; ++s)
      inside = pred_cycle_node(g, pred, color, s);
  }
  if (inside < 0) return std::nullopt;
  return collect_pred_cycle(g, pred, inside);
}

CycleAnalysis::CycleAnalysis(const LocalGraph& g, int threads) : g_(g) {
  const size_t n = static_cast<size_t>(g.n);
  phi_.assign(n, 0.0);
  // Guarded Bellman-Ford from a virtual source on negated weights; converges
  // because every relaxation improves by more than the guard.
  for (int pass = 0; pass < 2 * g.n + 2; ++pass) {
    bool relaxed = false;
    for (int e = 0; e < g.edge_count(); ++e) {
      const size_t u = static_cast<size_t>(g.tails[static_cast<size_t>(e)]);
      const size_t v = static_cast<size_t>(g.heads[static_cast<size_t>(e)]);
      const double wn = -g.weights[static_cast<size_t>(e)];
      if (phi_[u] + wn < phi_[v] - kRelaxGuard) {
        phi_[v] = phi_[u] + wn;
        relaxed = true;
      }
    }
    if (!relaxed) break;
  }

  m_.assign(n, -kInf);
  if (g.edge_count() == 0) return;

  // Incoming edges grouped by head.
  std::vector<int> in_start(n + 1, 0);
  for (int h : g.heads) ++in_start[static_cast<size_t>(h) + 1];
  for (size_t i = 0; i < n; ++i) in_start[i + 1] += in_start[i];
  std::vector<int> in_order(static_cast<size_t>(g.edge_count()));
  {
    std::vector<int> cursor(in_start.begin(), in_start.end() - 1);
    for (int e = 0; e < g.edge_count(); ++e)
      in_order[static_cast<size_t>(cursor[g.heads[static_cast<size_t>(e)]]++)] = e;
  }

  parallel_for(n, threads, [&](size_t s) {
    std::vector<double> dist;
    dijkstra_reduced(g_, phi_, static_cast<int>(s), dist, nullptr);
    double best = -kInf;
    for (int k = in_start[s]; k < in_start[s + 1]; ++k) {
      const int e = in_order[static_cast<size_t>(k)];
      const size_t u = static_cast<size_t>(g_.tails[static_cast<size_t>(e)]);
      if (dist[u] == kInf) continue;
      // real dist from s to u = reduced dist - phi[s] + phi[u], on negated
      // weights; the closed walk s ->* u -> s has original weight
      // w(e) - that distance.
      const double neg_dist = dist[u] - phi_[s] + phi_[u];
      best = std::max(best, g_.weights[static_cast<size_t>(e)] - neg_dist);
    }
    m_[s] = best;
  });
}

std::vector<int> CycleAnalysis::best_cycle(int v) const {
  if (m(v) == -kInf) return {};
  std::vector<double> dist;
  std::vector<int> pred;
  dijkstra_reduced(g_, phi_, v, dist, &pred);
  const size_t sv = static_cast<size_t>(v);
  int best_edge = -1;
  double best = -kInf;
  for (int e = 0; e < g_.edge_count(); ++e) {
    if (g_.heads[static_cast<size_t>(e)] != v) continue;
    const size_t u = static_cast<size_t>(g_.tails[static_cast<size_t>(e)]);
    if (dist[u] == kInf) continue;
    const double val =
        g_.weights[static_cast<size_t>(e)] - (dist[u] - phi_[sv] + phi_[u]);
    if (val > best) {
      best = val;
      best_edge = e;
    }
  }
  if (best_edge < 0) return {};
  std::vector<int> edges;
  edges.push_back(best_edge);
  int x = g_.tails[static_cast<size_t>(best_edge)];
  while (x != v) {
    const int e = pred[static_cast<size_t>(x)];
    edges.push_back(e);
    x = g_.tails[static_cast<size_t>(e)];
  }
  std::reverse(edges.begin(), edges.end());
  return edges;
}

std::optional<std::vector<int>> bfs_path(const LocalGraph& g, int from, int to) {
  if (from == to) return std::vector<int>{};
  std::vector<int> pred(static_cast<size_t>(g.n), -1);
  std::vector<char> seen(static_cast<size_t>(g.n), 0);
  std::queue<int> q;
  seen[static_cast<size_t>(from)] = 1;
  q.push(from);
  while (!q.empty()) {
    const int u = q.front();
    q.pop();
    for (int k = g.start[static_cast<size_t>(u)];
         k < g.start[static_cast<size_t>(u) + 1]; ++k) {
      const int e = g.order[static_cast<size_t>(k)];
      const int v = g.heads[static_cast<size_t>(e)];
      if (seen[static_cast<size_t>(v)]) continue;
      seen[static_cast<size_t>(v)] = 1;
      pred[static_cast<size_t>(v)] = e;
      if (v == to) {
        std::vector<int> edges;
        int x = v;
        while (x != from) {
          const int pe = pred[static_cast<size_t>(x)];
          edges.push_back(pe);
          x = g.tails[static_cast<size_t>(pe)];
        }
        std::reverse(edges.begin(), edges.end());
        return edges;
      }
      q.push(v);
    }
  }
  return std::nullopt;
}

LocalGraph reversed(const LocalGraph& g) {
  LocalGraph r;
  r.n = g.n;
  r.tails = g.heads;
  r.heads = g.tails;
  r.weights = g.weights;
  r.global_node = g.global_node;
  r.global_edge = g.global_edge;
  r.finalize();
  return r;
}

std::vector<int> bfs_tree(const LocalGraph& g, int source) {
  std::vector<int> pred(static_cast<size_t>(g.n), -1);
  std::vector<char> seen(static_cast<size_t>(g.n), 0);
  std::queue<int> q;
  seen[static_cast<size_t>(source)] = 1;
  q.push(source);
  while (!q.empty()) {
    const int u = q.front();
    q.pop();
    for (int k = g.start[static_cast<size_t>(u)];
         k < g.start[static_cast<size_t>(u) + 1]; ++k) {
      const int e = g.order[static_cast<size_t>(k)];
      const int v = g.heads[static_cast<size_t>(e)];
      if (seen[static_cast<size_t>(v)]) continue;
      seen[static_cast<size_t>(v)] = 1;
      pred[static_cast<size_t>(v)] = e;
      q.push(v);
    }
  }
  return pred;
}

double path_weight(const LocalGraph& g, const std::vector<int>& edges) {
  double s = 0.0;
  for (int e : edges) s += g.weights[static_cast<size_t>(e)];
  return s;
}

Cycle to_cycle(const FlowGraph& g, const LocalGraph& lg,
               const std::vector<int>& local_edges) {
  Cycle c;
  c.cells.reserve(local_edges.size());
  c.displacement = Vec(g.grid.dim);
  for (int le : local_edges) {
    const Edge& e =
        g.edges[static_cast<size_t>(lg.global_edge[static_cast<size_t>(le)])];
    c.cells.push_back(e.tail);
    c.weight += e.weight;
    c.displacement += e.disp;
  }
  return c;
}

}  // namespace flowforms::detail
