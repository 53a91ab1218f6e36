#include "graph_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "flowforms/errors.hpp"

namespace flowforms::oracle {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::vector<std::vector<std::pair<int, double>>> adjacency(const FlowGraph& g) {
  std::vector<std::vector<std::pair<int, double>>> adj(
      static_cast<size_t>(g.cell_count()));
  for (const Edge& e : g.edges) {
    adj[static_cast<size_t>(e.tail)].emplace_back(e.head, e.weight);
  }
  return adj;
}

}  // namespace

void for_each_simple_cycle(
    const FlowGraph& g,
    const std::function<void(const std::vector<int>&, double)>& fn) {
  const int n = g.cell_count();
  auto adj = adjacency(g);
  std::vector<char> on_path(static_cast<size_t>(n), 0);
  std::vector<int> path;
  double weight = 0.0;
  // Each cycle is reported exactly once, rooted at its smallest cell: the
  // walk from root s only visits cells > s and closes on edges back to s.
  std::function<void(int, int)> dfs = [&](int s, int v) {
    on_path[static_cast<size_t>(v)] = 1;
    path.push_back(v);
    for (auto [u, w] : adj[static_cast<size_t>(v)]) {
      if (u == s) {
        fn(path, weight + w);
      } else if (u > s && !on_path[static_cast<size_t>(u)]) {
        weight += w;
        dfs(s, u);
        weight -= w;
      }
    }
    path.pop_back();
    on_path[static_cast<size_t>(v)] = 0;
  };
  for (int s = 0; s < n; ++s) {
    path.clear();
    weight = 0.0;
    dfs(s, s);
  }
}

ReferenceAnalysis enumerate_reference(const FlowGraph& g, double theta) {
  const int n = g.cell_count();
  ReferenceAnalysis ref;
  ref.m.assign(static_cast<size_t>(n), -kInf);

  for_each_simple_cycle(g, [&](const std::vector<int>& cells, double w) {
    ref.cycles.push_back(cells);
    ref.cycle_weights.push_back(w);
  });

  // Boolean transitive closure over length >= 1 paths.
  std::vector<std::vector<char>> reach(static_cast<size_t>(n),
                                       std::vector<char>(static_cast<size_t>(n), 0));
  for (const Edge& e : g.edges)
    reach[static_cast<size_t>(e.tail)][static_cast<size_t>(e.head)] = 1;
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      if (!reach[static_cast<size_t>(i)][static_cast<size_t>(k)]) continue;
      for (int j = 0; j < n; ++j) {
        if (reach[static_cast<size_t>(k)][static_cast<size_t>(j)])
          reach[static_cast<size_t>(i)][static_cast<size_t>(j)] = 1;
      }
    }
  }
  ref.mutual.assign(static_cast<size_t>(n),
                    std::vector<char>(static_cast<size_t>(n), 0));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      ref.mutual[static_cast<size_t>(i)][static_cast<size_t>(j)] =
          i == j || (reach[static_cast<size_t>(i)][static_cast<size_t>(j)] &&
                     reach[static_cast<size_t>(j)][static_cast<size_t>(i)]);
    }
  }

  std::vector<char> positive_class(static_cast<size_t>(n), 0);
  double best_mean = kNaN;
  for (size_t i = 0; i < ref.cycles.size(); ++i) {
    double w = ref.cycle_weights[i];
    double mean = w / static_cast<double>(ref.cycles[i].size());
    if (std::isnan(best_mean) || mean > best_mean) best_mean = mean;
    for (int v : ref.cycles[i]) {
      ref.m[static_cast<size_t>(v)] = std::max(ref.m[static_cast<size_t>(v)], w);
    }
    if (w > 0.0) {
      ref.has_positive_cycle = true;
      int anchor = ref.cycles[i][0];
      for (int v = 0; v < n; ++v) {
        if (ref.mutual[static_cast<size_t>(v)][static_cast<size_t>(anchor)])
          positive_class[static_cast<size_t>(v)] = 1;
      }
    }
  }
  ref.max_mean = best_mean;

  for (int v = 0; v < n; ++v) {
    bool on_cycle = ref.m[static_cast<size_t>(v)] > -kInf;
    if (positive_class[static_cast<size_t>(v)]) {
      ref.m[static_cast<size_t>(v)] = kInf;
      ref.R.push_back(v);
      ref.R_xi.push_back(v);
    } else if (on_cycle) {
      ref.R.push_back(v);
      if (ref.m[static_cast<size_t>(v)] >= -theta) {
        ref.R_xi.push_back(v);
      } else {
        ref.C_xi.push_back(v);
      }
    }
  }
  return ref;
}

double ReferenceAnalysis::max_mean_through(
    const FlowGraph& g, const std::vector<int>& restrict_cells) const {
  const int n = g.cell_count();
  std::vector<char> wanted(static_cast<size_t>(n), 0);
  for (int r : restrict_cells) {
    for (int v = 0; v < n; ++v) {
      if (mutual[static_cast<size_t>(v)][static_cast<size_t>(r)])
        wanted[static_cast<size_t>(v)] = 1;
    }
  }
  double best = kNaN;
  for (size_t i = 0; i < cycles.size(); ++i) {
    if (!wanted[static_cast<size_t>(cycles[i][0])]) continue;
    double mean = cycle_weights[i] / static_cast<double>(cycles[i].size());
    if (std::isnan(best) || mean > best) best = mean;
  }
  return best;
}

double karp_max_cycle_mean(const FlowGraph& g) {
  const int n = g.cell_count();
  ReferenceAnalysis closure;  // reuse the mutual relation only
  {
    std::vector<std::vector<char>> reach(
        static_cast<size_t>(n), std::vector<char>(static_cast<size_t>(n), 0));
    for (const Edge& e : g.edges)
      reach[static_cast<size_t>(e.tail)][static_cast<size_t>(e.head)] = 1;
    for (int k = 0; k < n; ++k) {
      for (int i = 0; i < n; ++i) {
        if (!reach[static_cast<size_t>(i)][static_cast<size_t>(k)]) continue;
        for (int j = 0; j < n; ++j) {
          if (reach[static_cast<size_t>(k)][static_cast<size_t>(j)])
            reach[static_cast<size_t>(i)][static_cast<size_t>(j)] = 1;
        }
      }
    }
    closure.mutual.assign(static_cast<size_t>(n),
                          std::vector<char>(static_cast<size_t>(n), 0));
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        closure.mutual[static_cast<size_t>(i)][static_cast<size_t>(j)] =
            i == j || (reach[static_cast<size_t>(i)][static_cast<size_t>(j)] &&
                       reach[static_cast<size_t>(j)][static_cast<size_t>(i)]);
      }
    }
  }

  std::vector<char> done(static_cast<size_t>(n), 0);
  double best = kNaN;
  for (int root = 0; root < n; ++root) {
    if (done[static_cast<size_t>(root)]) continue;
    std::vector<int> cells;
    for (int v = 0; v < n; ++v) {
      if (closure.mutual[static_cast<size_t>(root)][static_cast<size_t>(v)]) {
        cells.push_back(v);
        done[static_cast<size_t>(v)] = 1;
      }
    }
    const int m = static_cast<int>(cells.size());
    std::vector<int> local(static_cast<size_t>(n), -1);
    for (int i = 0; i < m; ++i) local[static_cast<size_t>(cells[i])] = i;
    std::vector<std::array<int, 2>> arcs;
    std::vector<double> wts;
    for (const Edge& e : g.edges) {
      int lu = local[static_cast<size_t>(e.tail)];
      int lv = local[static_cast<size_t>(e.head)];
      if (lu >= 0 && lv >= 0) {
        arcs.push_back({lu, lv});
        wts.push_back(e.weight);
      }
    }
    if (arcs.empty()) continue;

    // Karp on the strongly connected class: max walk weights from cell 0.
    std::vector<std::vector<double>> D(
        static_cast<size_t>(m + 1),
        std::vector<double>(static_cast<size_t>(m), -kInf));
    D[0][0] = 0.0;
    for (int k = 1; k <= m; ++k) {
      for (size_t a = 0; a < arcs.size(); ++a) {
        double du = D[static_cast<size_t>(k - 1)][static_cast<size_t>(arcs[a][0])];
        if (du == -kInf) continue;
        double& dv = D[static_cast<size_t>(k)][static_cast<size_t>(arcs[a][1])];
        dv = std::max(dv, du + wts[a]);
      }
    }
    for (int v = 0; v < m; ++v) {
      double dm = D[static_cast<size_t>(m)][static_cast<size_t>(v)];
      if (dm == -kInf) continue;
      double worst = kInf;
      for (int k = 0; k < m; ++k) {
        double dk = D[static_cast<size_t>(k)][static_cast<size_t>(v)];
        if (dk == -kInf) continue;
        worst = std::min(worst, (dm - dk) / (m - k));
      }
      if (worst < kInf && (std::isnan(best) || worst > best)) best = worst;
    }
  }
  return best;
}

bool constraints_feasible_fw(const FlowGraph& g, const RecurrenceReport& report,
                             double epsilon) {
  const int n = g.cell_count();
  const auto in_rxi = [&](int c) {
    return std::binary_search(report.R_xi.begin(), report.R_xi.end(), c);
  };
  std::vector<std::vector<double>> d(static_cast<size_t>(n),
                                     std::vector<double>(static_cast<size_t>(n), kInf));
  for (int i = 0; i < n; ++i) d[static_cast<size_t>(i)][static_cast<size_t>(i)] = 0.0;
  auto relax = [&](int u, int v, double w) {
    double& slot = d[static_cast<size_t>(u)][static_cast<size_t>(v)];
    slot = std::min(slot, w);
  };
  for (const Edge& e : g.edges) {
    if (in_rxi(e.tail) && in_rxi(e.head)) {
      relax(e.tail, e.head, -e.weight + report.theta);
      if (report.scc_id[e.tail] == report.scc_id[e.head])
        relax(e.head, e.tail, e.weight + report.theta);
    } else {
      relax(e.tail, e.head, -e.weight - epsilon);
    }
  }
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      double dik = d[static_cast<size_t>(i)][static_cast<size_t>(k)];
      if (dik == kInf) continue;
      for (int j = 0; j < n; ++j) {
        double dkj = d[static_cast<size_t>(k)][static_cast<size_t>(j)];
        if (dkj == kInf) continue;
        double& slot = d[static_cast<size_t>(i)][static_cast<size_t>(j)];
        slot = std::min(slot, dik + dkj);
      }
    }
  }
  for (int v = 0; v < n; ++v) {
    if (d[static_cast<size_t>(v)][static_cast<size_t>(v)] < -1e-9) return false;
  }
  return true;
}

FlowGraph random_graph(int n, double p, int wlo, int whi, SplitMix64& rng) {
  if (n < 1 || n > 4096) throw InputError("random_graph: n out of range");
  if (wlo > whi) throw InputError("random_graph: empty weight range");
  FlowGraph g;
  g.grid = Grid(1, {n, 0, 0});
  g.tau = 2.0;
  g.padding = 1;
  g.samples_per_cell = 1;
  g.integration_step = 0.0;
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v) {
      if (rng.next_double() >= p) continue;
      Edge e;
      e.tail = u;
      e.head = v;
      e.weight = rng.next_int(wlo, whi);
      e.disp = Vec(1);
      e.disp[0] = e.weight;
      g.edges.push_back(e);
    }
  }
  return g;
}

}  // namespace flowforms::oracle
