#include "flowforms/flow_graph.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "flowforms/errors.hpp"
#include "flowforms/parallel.hpp"
#include "flowforms/sampling.hpp"

namespace flowforms {

namespace {

constexpr double kMaxStepTravel = 0.2;  // sup|V| * step stays below this

struct RawEdge {
  int tail;
  int head;
  Vec disp;
  double weight;
};

bool lex_less(const Vec& a, const Vec& b) {
  for (int d = 0; d < a.dim(); ++d) {
    if (a[d] != b[d]) return a[d] < b[d];
  }
  return false;
}

}  // namespace

FlowGraph build_flow_graph(const TorusFlowSpec& spec, const ClosedOneForm& form,
                           const Grid& grid, double tau, int samples_per_cell,
                           int padding, int threads) {
  spec.validate();
  form.validate();
  if (grid.dim != spec.dim) throw InputError("grid dimension does not match flow");
  if (form.dim() != spec.dim) throw InputError("form dimension does not match flow");
  if (grid.cell_count() <= 0) throw InputError("grid has no cells");
  if (!(tau > 1.0)) throw ConfigError("tau must exceed 1 (transition time scale)");
  if (samples_per_cell < 1) throw InputError("samples_per_cell must be positive");
  if (padding < 1) throw InputError("padding must be at least 1");

  const int dim = spec.dim;
  const double vmax = sup_speed(spec);
  const double h_bound = vmax > 0.0 ? kMaxStepTravel / vmax : tau;
  const int substeps = std::max(1, static_cast<int>(std::ceil(tau / h_bound)));
  const double h = tau / substeps;

  // One shared offset lattice: offset 0 is the cell center, the rest fill the
  // cell quasi-uniformly.  Components are fractions of a cell in [0, 1).
  QuasiPoints lattice(dim, 0);
  std::vector<Vec> offsets(static_cast<size_t>(samples_per_cell));
  for (int s = 0; s < samples_per_cell; ++s)
    offsets[static_cast<size_t>(s)] = lattice.point(s);

  std::vector<std::array<long long, 3>> dilation;
  {
    const long long span = 2LL * padding + 1;
    long long total = 1;
    for (int d = 0; d < dim; ++d) total *= span;
    dilation.reserve(static_cast<size_t>(total));
    for (long long t = 0; t < total; ++t) {
      std::array<long long, 3> off{0, 0, 0};
      long long rem = t;
      for (int d = 0; d < dim; ++d) {
        off[d] = rem % span - padding;
        rem /= span;
      }
      dilation.push_back(off);
    }
  }

  const int cells = grid.cell_count();
  std::vector<std::vector<RawEdge>> per_cell(static_cast<size_t>(cells));

  parallel_for(static_cast<size_t>(cells), threads, [&](size_t c) {
    const int cell = static_cast<int>(c);
    const auto base = grid.index_of(cell);
    const Vec tail_center = grid.center(cell);
    const double f_tail =
        form.potential.empty() ? 0.0 : form.potential.eval(tail_center);
    auto& out = per_cell[c];
    out.reserve(offsets.size() * dilation.size());

    for (const Vec& off : offsets) {
      Vec x(dim);
      for (int d = 0; d < dim; ++d)
        x[d] = (base[d] + off[d]) / grid.res[d];

      for (int i = 0; i < substeps; ++i) x = rk4_step(spec, x, h);

      // Landing box of the unwrapped endpoint; keeping it unwrapped lets the
      // displacement carry the homology winding.
      std::array<long long, 3> box{0, 0, 0};
      for (int d = 0; d < dim; ++d)
        box[d] = static_cast<long long>(std::floor(x[d] * grid.res[d]));

      for (const auto& doff : dilation) {
        std::array<long long, 3> target = box;
        Vec disp(dim);
        for (int d = 0; d < dim; ++d) {
          target[d] += doff[d];
          disp[d] = (target[d] + 0.5) / grid.res[d] - tail_center[d];
        }
        const int head = grid.id_of_wrapped(target);
        // same association as reweight() so the weights match bitwise
        double w = dot(form.periods, disp);
        if (!form.potential.empty())
          w += form.potential.eval(tail_center + disp) - f_tail;
        out.push_back({cell, head, disp, w});
      }
    }
  });

  FlowGraph g;
  g.grid = grid;
  g.tau = tau;
  g.padding = padding;
  g.samples_per_cell = samples_per_cell;
  g.integration_step = h;

  size_t total = 0;
  for (const auto& v : per_cell) total += v.size();
  std::vector<RawEdge> raw;
  raw.reserve(total);
  for (auto& v : per_cell) {
    raw.insert(raw.end(), v.begin(), v.end());
    v.clear();
    v.shrink_to_fit();
  }

  std::sort(raw.begin(), raw.end(), [](const RawEdge& a, const RawEdge& b) {
    if (a.tail != b.tail) return a.tail < b.tail;
    if (a.head != b.head) return a.head < b.head;
    if (a.weight != b.weight) return a.weight > b.weight;
    return lex_less(a.disp, b.disp);
  });

  g.edges.reserve(raw.size());
  for (const auto& e : raw) {
    if (!g.edges.empty() && g.edges.back().tail == e.tail &&
        g.edges.back().head == e.head) {
      continue;  // max-weight representative already kept
    }
    g.edges.push_back({e.tail, e.head, e.disp, e.weight});
  }
  g.edges.shrink_to_fit();
  return g;
}

FlowGraph reweight(const FlowGraph& graph, const ClosedOneForm& form) {
  form.validate();
  if (form.dim() != graph.grid.dim)
    throw InputError("form dimension does not match graph");
  FlowGraph out = graph;
  for (auto& e : out.edges) {
    const Vec a = graph.grid.center(e.tail);
    e.weight = dot(form.periods, e.disp);
    if (!form.potential.empty())
      e.weight += form.potential.eval(a + e.disp) - form.potential.eval(a);
  }
  return out;
}

Adjacency Adjacency::of(const FlowGraph& g) {
  Adjacency adj;
  const size_t n = static_cast<size_t>(g.cell_count());
  adj.start.assign(n + 1, 0);
  for (const auto& e : g.edges) ++adj.start[static_cast<size_t>(e.tail) + 1];
  for (size_t i = 0; i < n; ++i) adj.start[i + 1] += adj.start[i];
  adj.order.resize(g.edges.size());
  std::vector<int> cursor(adj.start.begin(), adj.start.end() - 1);
  for (int i = 0; i < static_cast<int>(g.edges.size()); ++i)
    adj.order[static_cast<size_t>(cursor[g.edges[static_cast<size_t>(i)].tail]++)] = i;
  return adj;
}

int Adjacency::find(const FlowGraph& g, int tail, int head) const {
  for (int k = start[static_cast<size_t>(tail)];
       k < start[static_cast<size_t>(tail) + 1]; ++k) {
    const int ei = order[static_cast<size_t>(k)];
    if (g.edges[static_cast<size_t>(ei)].head == head) return ei;
  }
  return -1;
}

double default_theta(const FlowGraph& graph, const ClosedOneForm& form) {
  const int dim = graph.grid.dim;
  const int per_axis = 17;
  long long total = 1;
  for (int d = 0; d < dim; ++d) total *= per_axis;
  double sup = 0.0;
  Vec x(dim);
  for (long long t = 0; t < total; ++t) {
    long long rem = t;
    for (int d = 0; d < dim; ++d) {
      x[d] = static_cast<double>(rem % per_axis) / per_axis;
      rem /= per_axis;
    }
    sup = std::max(sup, inf_norm(form.coefficients(x)));
  }
  return graph.grid.spacing_max() * sup * 2.0;
}

}  // namespace flowforms
