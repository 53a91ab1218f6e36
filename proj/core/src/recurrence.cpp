#include "flowforms/recurrence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "flowforms/errors.hpp"
#include "weighted_cycles.hpp"

namespace flowforms {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

Cycle make_cycle(const FlowGraph& graph, const std::vector<int>& cells) {
  if (cells.empty()) throw NotACycleError("make_cycle: empty cell sequence");
  const Adjacency adj = Adjacency::of(graph);
  Cycle c;
  c.cells = cells;
  c.displacement = Vec(graph.grid.dim);
  const int len = static_cast<int>(cells.size());
  for (int i = 0; i < len; ++i) {
    const int tail = cells[static_cast<size_t>(i)];
    const int head = cells[static_cast<size_t>((i + 1) % len)];
    const int e = adj.find(graph, tail, head);
    if (e < 0) throw NotACycleError("make_cycle: missing arc in cell sequence");
    c.weight += graph.edges[static_cast<size_t>(e)].weight;
    c.displacement += graph.edges[static_cast<size_t>(e)].disp;
  }
  return c;
}

SccPartition strongly_connected_components(const FlowGraph& graph) {
  const int n = graph.cell_count();
  const Adjacency adj = Adjacency::of(graph);

  SccPartition part;
  part.comp.assign(static_cast<size_t>(n), -1);

  std::vector<int> index(static_cast<size_t>(n), -1);
  std::vector<int> low(static_cast<size_t>(n), 0);
  std::vector<char> on_stack(static_cast<size_t>(n), 0);
  std::vector<int> stack;
  struct Frame {
    int v;
    int pos;
  };
  std::vector<Frame> call;
  int next_index = 0;
  int completed = 0;

  for (int root = 0; root < n; ++root) {
    if (index[static_cast<size_t>(root)] != -1) continue;
    index[static_cast<size_t>(root)] = low[static_cast<size_t>(root)] = next_index++;
    stack.push_back(root);
    on_stack[static_cast<size_t>(root)] = 1;
    call.push_back({root, adj.start[static_cast<size_t>(root)]});
    while (!call.empty()) {
      Frame& f = call.back();
      if (f.pos < adj.start[static_cast<size_t>(f.v) + 1]) {
        const int e = adj.order[static_cast<size_t>(f.pos++)];
        const int w = graph.edges[static_cast<size_t>(e)].head;
        if (index[static_cast<size_t>(w)] == -1) {
          index[static_cast<size_t>(w)] = low[static_cast<size_t>(w)] = next_index++;
          stack.push_back(w);
          on_stack[static_cast<size_t>(w)] = 1;
          call.push_back({w, adj.start[static_cast<size_t>(w)]});
        } else if (on_stack[static_cast<size_t>(w)]) {
          low[static_cast<size_t>(f.v)] =
              std::min(low[static_cast<size_t>(f.v)], index[static_cast<size_t>(w)]);
        }
      } else {
        const int v = f.v;
        call.pop_back();
        if (!call.empty()) {
          low[static_cast<size_t>(call.back().v)] =
              std::min(low[static_cast<size_t>(call.back().v)], low[static_cast<size_t>(v)]);
        }
        if (low[static_cast<size_t>(v)] == index[static_cast<size_t>(v)]) {
          while (true) {
            const int w = stack.back();
            stack.pop_back();
            on_stack[static_cast<size_t>(w)] = 0;
            part.comp[static_cast<size_t>(w)] = completed;
            if (w == v) break;
          }
          ++completed;
        }
      }
    }
  }

  // Tarjan completes components in reverse topological order; flip so that
  // every edge goes from a lower id to a higher or equal id.
  part.count = completed;
  for (int v = 0; v < n; ++v)
    part.comp[static_cast<size_t>(v)] = completed - 1 - part.comp[static_cast<size_t>(v)];

  part.members.assign(static_cast<size_t>(part.count), {});
  for (int v = 0; v < n; ++v)
    part.members[static_cast<size_t>(part.comp[static_cast<size_t>(v)])].push_back(v);

  part.has_cycle.assign(static_cast<size_t>(part.count), 0);
  for (int c = 0; c < part.count; ++c)
    if (part.members[static_cast<size_t>(c)].size() > 1)
      part.has_cycle[static_cast<size_t>(c)] = 1;
  for (const Edge& e : graph.edges)
    if (e.tail == e.head)
      part.has_cycle[static_cast<size_t>(part.comp[static_cast<size_t>(e.tail)])] = 1;

  return part;
}

std::vector<int> chain_recurrent_cells(const FlowGraph& graph) {
  const SccPartition part = strongly_connected_components(graph);
  std::vector<int> cells;
  for (int c = 0; c < part.count; ++c) {
    if (!part.has_cycle[static_cast<size_t>(c)]) continue;
    const auto& m = part.members[static_cast<size_t>(c)];
    cells.insert(cells.end(), m.begin(), m.end());
  }
  std::sort(cells.begin(), cells.end());
  return cells;
}

RecurrenceReport xi_recurrent_cells(const FlowGraph& graph, double theta,
                                    int threads) {
  if (theta < 0.0) throw InputError("xi_recurrent_cells: theta must be >= 0");
  const SccPartition part = strongly_connected_components(graph);

  RecurrenceReport rep;
  rep.theta = theta;
  rep.scc_id = part.comp;
  rep.m_value.assign(static_cast<size_t>(graph.cell_count()), -kInf);

  struct XiCell {
    int cell;
    Cycle witness;
  };
  std::vector<XiCell> xi_cells;

  for (int c = 0; c < part.count; ++c) {
    if (!part.has_cycle[static_cast<size_t>(c)]) continue;
    const auto& members = part.members[static_cast<size_t>(c)];
    rep.R.insert(rep.R.end(), members.begin(), members.end());

    detail::LocalGraph lg = detail::induced_subgraph(graph, members);
    if (auto pos = detail::positive_cycle(lg)) {
      const Cycle wit = detail::to_cycle(graph, lg, *pos);
      rep.positive_cycle_sccs.push_back(c);
      rep.positive_witnesses.push_back(wit);
      // Every member joins R_xi: looping the positive cycle lifts any closed
      // walk above every threshold.  Witness: reach the cycle, loop it until
      // the total clears -theta, return.
      int anchor_local = 0;
      while (lg.global_node[static_cast<size_t>(anchor_local)] != wit.cells.front())
        ++anchor_local;
      const std::vector<int> out_tree = detail::bfs_tree(lg, anchor_local);
      const std::vector<int> in_tree =
          detail::bfs_tree(detail::reversed(lg), anchor_local);
      for (int i = 0; i < lg.n; ++i) {
        const int v = members[static_cast<size_t>(i)];
        rep.m_value[static_cast<size_t>(v)] = kInf;
        // anchor -> v along the out tree (collected backwards).
        std::vector<int> to_v;
        for (int x = i; x != anchor_local; x = lg.tails[static_cast<size_t>(out_tree[static_cast<size_t>(x)])])
          to_v.push_back(out_tree[static_cast<size_t>(x)]);
        std::reverse(to_v.begin(), to_v.end());
        // v -> anchor: predecessor edges of the reversed tree read forwards.
        std::vector<int> from_v;
        for (int x = i; x != anchor_local; x = lg.heads[static_cast<size_t>(in_tree[static_cast<size_t>(x)])])
          from_v.push_back(in_tree[static_cast<size_t>(x)]);

        const Cycle ret = detail::to_cycle(graph, lg, to_v);
        const Cycle reach = detail::to_cycle(graph, lg, from_v);
        const double base = reach.weight + ret.weight;
        long long loops = 1;
        if (base + theta < 0.0)
          loops += static_cast<long long>(std::ceil((-theta - base) / wit.weight));
        Cycle walk;
        walk.cells = reach.cells;
        for (long long l = 0; l < loops; ++l)
          walk.cells.insert(walk.cells.end(), wit.cells.begin(), wit.cells.end());
        walk.cells.insert(walk.cells.end(), ret.cells.begin(), ret.cells.end());
        walk.weight = base + static_cast<double>(loops) * wit.weight;
        walk.displacement = reach.displacement + ret.displacement +
                            wit.displacement * static_cast<double>(loops);
        xi_cells.push_back({v, std::move(walk)});
      }
      continue;
    }

    detail::CycleAnalysis ca(lg, threads);
    for (int i = 0; i < lg.n; ++i) {
      const int v = members[static_cast<size_t>(i)];
      rep.m_value[static_cast<size_t>(v)] = ca.m(i);
      if (ca.m(i) >= -theta) {
        xi_cells.push_back({v, detail::to_cycle(graph, lg, ca.best_cycle(i))});
      }
    }
  }

  std::sort(rep.R.begin(), rep.R.end());
  std::sort(xi_cells.begin(), xi_cells.end(),
            [](const XiCell& a, const XiCell& b) { return a.cell < b.cell; });
  rep.R_xi.reserve(xi_cells.size());
  rep.rxi_witnesses.reserve(xi_cells.size());
  for (auto& xc : xi_cells) {
    rep.R_xi.push_back(xc.cell);
    rep.rxi_witnesses.push_back(std::move(xc.witness));
  }
  std::set_difference(rep.R.begin(), rep.R.end(), rep.R_xi.begin(),
                      rep.R_xi.end(), std::back_inserter(rep.C_xi));
  return rep;
}

CycleClass delta_T_cycle_class(const Trajectory& traj, const ClosedOneForm& form,
                               double delta) {
  if (traj.empty()) throw InputError("delta_T_cycle_class: empty trajectory");
  if (!(delta > 0.0) || delta >= 0.5)
    throw InputError("delta_T_cycle_class: delta must lie in (0, 0.5)");
  form.validate();
  const Vec a = traj.points.front();
  const Vec b = traj.points.back();
  if (a.dim() != form.dim())
    throw InputError("delta_T_cycle_class: dimension mismatch");
  if (torus_dist_sup(a, b) >= delta)
    throw NotACycleError("delta_T_cycle_class: endpoints farther than delta");

  const Vec disp = traj.displacement();
  CycleClass cc;
  cc.dim = a.dim();
  cc.duration = traj.duration();
  for (int i = 0; i < cc.dim; ++i) {
    if (dist_to_integer(disp[i]) > 0.1)
      throw AmbiguityError(
          "delta_T_cycle_class: displacement too far from an integer vector");
    cc.z[static_cast<size_t>(i)] = std::llround(disp[i]);
    cc.pairing += form.periods[i] * static_cast<double>(cc.z[static_cast<size_t>(i)]);
  }
  return cc;
}

}  // namespace flowforms
