#include "flowforms/synthesis.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "flowforms/errors.hpp"
#include "flowforms/sampling.hpp"
#include "weighted_cycles.hpp"

namespace flowforms {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// One difference constraint g[v] - g[u] <= w, tagged with the FlowGraph edge
// it came from and whether it follows that edge or reverses it.
struct Arc {
  int u = 0;
  int v = 0;
  double w = 0.0;
  int edge = -1;
  bool forward = true;
};

// Node on a cycle of the predecessor graph reachable from `from`, or -1.
int pred_cycle_node(const std::vector<int>& pred, const std::vector<Arc>& arcs,
                    std::vector<int>& color, int from, int stamp) {
  int x = from;
  while (x >= 0 && color[x] == 0) {
    color[x] = stamp;
    int p = pred[x];
    x = p < 0 ? -1 : arcs[p].u;
  }
  if (x >= 0 && color[x] == stamp) return x;
  return -1;
}

std::vector<int> collect_pred_cycle(const std::vector<int>& pred,
                                    const std::vector<Arc>& arcs, int on_cycle) {
  std::vector<int> cyc;
  int x = on_cycle;
  do {
    int p = pred[x];
    cyc.push_back(p);
    x = arcs[p].u;
  } while (x != on_cycle);
  std::reverse(cyc.begin(), cyc.end());
  return cyc;
}

}  // namespace

PotentialResult synthesize_potential(const FlowGraph& graph,
                                     const RecurrenceReport& report,
                                     double epsilon) {
  const int n = graph.cell_count();
  if (n <= 0) throw InputError("synthesize_potential: empty graph");
  if (!(epsilon > 0.0))
    throw InputError("synthesize_potential: epsilon must be positive");
  if (static_cast<int>(report.scc_id.size()) != n)
    throw InputError("synthesize_potential: report does not match graph");

  const auto in_rxi = [&](int c) {
    return std::binary_search(report.R_xi.begin(), report.R_xi.end(), c);
  };

  std::vector<Arc> arcs;
  arcs.reserve(graph.edges.size() + report.R_xi.size());
  for (int e = 0; e < static_cast<int>(graph.edges.size()); ++e) {
    const Edge& ed = graph.edges[e];
    if (in_rxi(ed.tail) && in_rxi(ed.head)) {
      arcs.push_back({ed.tail, ed.head, -ed.weight + report.theta, e, true});
      if (report.scc_id[ed.tail] == report.scc_id[ed.head]) {
        arcs.push_back({ed.head, ed.tail, ed.weight + report.theta, e, false});
      }
    } else {
      arcs.push_back({ed.tail, ed.head, -ed.weight - epsilon, e, true});
    }
  }

  // Bellman-Ford from a virtual source wired to every cell with weight 0,
  // folded into the all-zero initialization.
  const double guard = detail::kRelaxGuard;
  std::vector<double> dist(n, 0.0);
  std::vector<int> pred(n, -1);
  bool changed = true;
  for (int pass = 0; pass < n && changed; ++pass) {
    changed = false;
    for (int a = 0; a < static_cast<int>(arcs.size()); ++a) {
      const Arc& arc = arcs[a];
      if (dist[arc.u] + arc.w < dist[arc.v] - guard) {
        dist[arc.v] = dist[arc.u] + arc.w;
        pred[arc.v] = a;
        changed = true;
      }
    }
  }

  PotentialResult out;
  if (!changed) {
    out.feasible = true;
    out.g = std::move(dist);
    auto [lo, hi] = std::minmax_element(out.g.begin(), out.g.end());
    std::ostringstream os;
    os << arcs.size() << " constraints over " << n << " cells solved; g in ["
       << *lo << ", " << *hi << "]";
    out.notes = os.str();
    return out;
  }

  // Still relaxing after n passes: the constraints carry a negative cycle.
  int candidate = -1;
  for (int a = 0; a < static_cast<int>(arcs.size()) && candidate < 0; ++a) {
    const Arc& arc = arcs[a];
    if (dist[arc.u] + arc.w < dist[arc.v] - guard) {
      dist[arc.v] = dist[arc.u] + arc.w;
      pred[arc.v] = a;
      candidate = arc.v;
    }
  }
  std::vector<int> color(n, 0);
  int on_cycle =
      candidate >= 0 ? pred_cycle_node(pred, arcs, color, candidate, 1) : -1;
  for (int v = 0; v < n && on_cycle < 0; ++v) {
    if (color[v] == 0) on_cycle = pred_cycle_node(pred, arcs, color, v, v + 2);
  }
  if (on_cycle < 0) {
    // Relaxations shrank below the guard without forming a predecessor
    // cycle; treat as converged.
    out.feasible = true;
    out.g = std::move(dist);
    out.notes = "constraints solved (relaxation tail below the noise guard)";
    return out;
  }

  std::vector<int> cyc = collect_pred_cycle(pred, arcs, on_cycle);
  out.feasible = false;
  out.g.assign(static_cast<size_t>(n), 0.0);

  bool all_forward = true;
  double slack_sum = 0.0;
  int outside_edges = 0;
  for (int a : cyc) {
    slack_sum += arcs[a].w;
    if (!arcs[a].forward) all_forward = false;
    if (arcs[a].forward && arcs[a].w == -graph.edges[arcs[a].edge].weight - epsilon)
      ++outside_edges;
  }
  std::ostringstream os;
  if (all_forward) {
    Cycle wit;
    wit.displacement = Vec(graph.grid.dim);
    for (int a : cyc) {
      const Edge& ed = graph.edges[arcs[a].edge];
      wit.cells.push_back(ed.tail);
      wit.weight += ed.weight;
      wit.displacement += ed.disp;
    }
    out.witness = std::move(wit);
    os << "infeasible: cycle through " << cyc.size() << " cells has weight "
       << out.witness->weight << "; with " << outside_edges
       << " edges outside R_xi it cannot absorb the required decrease "
       << "(constraint slack " << slack_sum << " < 0)";
  } else {
    os << "infeasible: negative constraint cycle of length " << cyc.size()
       << " (slack " << slack_sum << ") mixes forward and reversed R_xi arcs; "
       << "the near-zero band theta = " << report.theta
       << " is too tight for the R_xi cycle weights";
    Cycle walk;
    walk.displacement = Vec(graph.grid.dim);
    for (int a : cyc) {
      walk.cells.push_back(arcs[a].u);
      const Edge& ed = graph.edges[arcs[a].edge];
      walk.weight += arcs[a].forward ? ed.weight : -ed.weight;
    }
    out.witness = std::move(walk);
  }
  out.notes = os.str();
  return out;
}

std::vector<double> conley_lyapunov(const FlowGraph& graph) {
  const int n = graph.cell_count();
  if (n <= 0) throw InputError("conley_lyapunov: empty graph");
  SccPartition scc = strongly_connected_components(graph);
  const int nc = scc.count;
  const size_t words = (static_cast<size_t>(nc) + 63) / 64;
  if (static_cast<size_t>(nc) * words * 8 > (size_t{3} << 30)) {
    throw ConfigError(
        "conley_lyapunov: dense reachability over this many components "
        "exceeds 3 GiB; coarsen the grid");
  }

  std::vector<std::pair<int, int>> carcs;
  for (const Edge& e : graph.edges) {
    int a = scc.comp[e.tail], b = scc.comp[e.head];
    if (a != b) carcs.emplace_back(a, b);
  }
  std::sort(carcs.begin(), carcs.end());
  carcs.erase(std::unique(carcs.begin(), carcs.end()), carcs.end());

  // Component ids are topological (arcs only increase them), so a single
  // sweep from the highest id closes reachability.
  std::vector<uint64_t> reach(words * static_cast<size_t>(nc), 0);
  size_t arc_pos = carcs.size();
  for (int c = nc - 1; c >= 0; --c) {
    uint64_t* row = &reach[words * static_cast<size_t>(c)];
    row[static_cast<size_t>(c) >> 6] |= uint64_t{1} << (c & 63);
    while (arc_pos > 0 && carcs[arc_pos - 1].first == c) {
      const uint64_t* succ =
          &reach[words * static_cast<size_t>(carcs[arc_pos - 1].second)];
      for (size_t w = 0; w < words; ++w) row[w] |= succ[w];
      --arc_pos;
    }
  }

  std::vector<int> reaching(nc, 0);
  for (int m = 0; m < nc; ++m) {
    const uint64_t* row = &reach[words * static_cast<size_t>(m)];
    for (size_t w = 0; w < words; ++w) {
      uint64_t bits = row[w];
      while (bits != 0) {
        int b = std::countr_zero(bits);
        bits &= bits - 1;
        ++reaching[(w << 6) + static_cast<size_t>(b)];
      }
    }
  }

  std::vector<double> L(static_cast<size_t>(n));
  for (int c = 0; c < n; ++c) {
    L[c] = static_cast<double>(nc - reaching[scc.comp[c]]) / nc;
  }
  return L;
}

double default_epsilon(const FlowGraph& graph) {
  std::vector<double> mags;
  mags.reserve(graph.edges.size());
  for (const Edge& e : graph.edges) {
    if (e.weight < 0.0) mags.push_back(-e.weight);
  }
  if (mags.empty()) {
    for (const Edge& e : graph.edges) mags.push_back(std::fabs(e.weight));
  }
  if (mags.empty()) return 1e-6;
  size_t mid = mags.size() / 2;
  std::nth_element(mags.begin(), mags.begin() + mid, mags.end());
  double med = mags[mid];
  return med > 0.0 ? 0.1 * med : 1e-6;
}

DiscreteLyapunovData combine(const FlowGraph& graph, const std::vector<double>& g,
                             const std::vector<double>& L,
                             const RecurrenceReport& report, double epsilon) {
  const int n = graph.cell_count();
  if (static_cast<int>(g.size()) != n || static_cast<int>(L.size()) != n)
    throw InputError("combine: g and L need one value per cell");
  if (!(epsilon > 0.0)) throw InputError("combine: epsilon must be positive");
  if (static_cast<int>(report.scc_id.size()) != n)
    throw InputError("combine: report does not match graph");

  const auto in_rxi = [&](int c) {
    return std::binary_search(report.R_xi.begin(), report.R_xi.end(), c);
  };

  DiscreteLyapunovData out;
  out.g = g;
  out.L = L;
  out.epsilon = epsilon;

  double lambda0 = 1.0;
  double lambda = 1.0;
  for (const Edge& e : graph.edges) {
    if (report.scc_id[e.tail] == report.scc_id[e.head]) continue;
    double dL = L[e.head] - L[e.tail];
    if (dL >= 0.0) {
      std::ostringstream os;
      os << "combine: L fails to drop across components on edge " << e.tail
         << "->" << e.head << " (dL = " << dL << ")";
      throw std::logic_error(os.str());
    }
    double base = e.weight + g[e.head] - g[e.tail];
    if (!in_rxi(e.tail) && !in_rxi(e.head)) {
      lambda0 = std::max(lambda0, 1.0 + std::fabs(base) / (-dL));
    }
    lambda = std::max(lambda, (base + epsilon) / (-dL));
  }
  lambda = std::max(lambda, lambda0);
  out.lambda = lambda;

  const double slack = 1e-9;
  out.w2.resize(graph.edges.size());
  out.feasible = true;
  int violations = 0;
  std::ostringstream bad;
  for (size_t i = 0; i < graph.edges.size(); ++i) {
    const Edge& e = graph.edges[i];
    double w2 =
        e.weight + g[e.head] - g[e.tail] + lambda * (L[e.head] - L[e.tail]);
    out.w2[i] = w2;
    bool same = report.scc_id[e.tail] == report.scc_id[e.head];
    bool both = in_rxi(e.tail) && in_rxi(e.head);
    bool ok = same && both ? std::fabs(w2) <= report.theta + slack
                           : w2 <= -epsilon + slack;
    if (!ok) {
      out.feasible = false;
      if (++violations <= 4) {
        bad << "; edge " << e.tail << "->" << e.head << " w2 = " << w2
            << (same && both ? " outside the theta band" : " above -epsilon");
      }
    }
  }

  std::ostringstream os;
  os << "lambda0 = " << lambda0 << ", lambda = " << lambda;
  if (!out.feasible) os << "; " << violations << " violated edges" << bad.str();
  out.notes = os.str();
  return out;
}

TrigFit fit_smooth_correction(const Grid& grid, const std::vector<double>& values,
                              int max_frequency) {
  if (grid.cell_count() <= 0) throw InputError("fit_smooth_correction: empty grid");
  const int n = grid.cell_count();
  if (static_cast<int>(values.size()) != n)
    throw InputError("fit_smooth_correction: one value per cell required");
  if (max_frequency < 0)
    throw InputError("fit_smooth_correction: max_frequency must be >= 0");
  int min_res = grid.res[0];
  for (int i = 1; i < grid.dim; ++i) min_res = std::min(min_res, grid.res[i]);
  if (2 * max_frequency >= min_res) {
    std::ostringstream os;
    os << "fit_smooth_correction: max_frequency " << max_frequency
       << " aliases on resolution " << min_res
       << "; need 2*max_frequency < min resolution";
    throw ConfigError(os.str());
  }

  std::vector<Vec> centers;
  centers.reserve(static_cast<size_t>(n));
  for (int c = 0; c < n; ++c) centers.push_back(grid.center(c));

  TrigPoly poly(grid.dim);
  double mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  poly.add_term(mean, {0, 0, 0}, Basis::Cos);

  constexpr double kTwoPi = 6.283185307179586476925286766559;
  const double norm_floor = 1e-9 * n;
  std::array<int, 3> k{0, 0, 0};
  const int m = max_frequency;
  const int lo1 = grid.dim >= 2 ? -m : 0, hi1 = grid.dim >= 2 ? m : 0;
  const int lo2 = grid.dim >= 3 ? -m : 0, hi2 = grid.dim >= 3 ? m : 0;
  for (k[0] = -m; k[0] <= m; ++k[0]) {
    for (k[1] = lo1; k[1] <= hi1; ++k[1]) {
      for (k[2] = lo2; k[2] <= hi2; ++k[2]) {
        int lead = k[0] != 0 ? k[0] : (k[1] != 0 ? k[1] : k[2]);
        if (lead <= 0) continue;  // keep one representative of each +-k pair
        double cc = 0.0, ss = 0.0, cv = 0.0, sv = 0.0;
        for (int c = 0; c < n; ++c) {
          double phase = 0.0;
          for (int i = 0; i < grid.dim; ++i) phase += k[i] * centers[c][i];
          phase *= kTwoPi;
          double co = std::cos(phase), si = std::sin(phase);
          cc += co * co;
          ss += si * si;
          cv += co * values[static_cast<size_t>(c)];
          sv += si * values[static_cast<size_t>(c)];
        }
        if (cc > norm_floor) poly.add_term(cv / cc, k, Basis::Cos);
        if (ss > norm_floor) poly.add_term(sv / ss, k, Basis::Sin);
      }
    }
  }

  TrigFit fit;
  fit.poly = std::move(poly);
  for (int c = 0; c < n; ++c) {
    fit.max_residual = std::max(
        fit.max_residual,
        std::fabs(fit.poly.eval(centers[c]) - values[static_cast<size_t>(c)]));
  }
  return fit;
}

ClosedOneForm SmoothLyapunovForm::total_form() const {
  const int d = base.dim();
  TrigPoly p = TrigPoly::zero(d);
  if (!base.potential.empty()) p += base.potential;
  if (!correction.empty()) p += correction.scaled(-1.0);
  if (!lambda_conley.empty()) p += lambda_conley;
  return ClosedOneForm{base.periods, std::move(p)};
}

VerificationReport verify_lyapunov(const TorusFlowSpec& spec,
                                   const SmoothLyapunovForm& candidate,
                                   const Grid& grid,
                                   const std::vector<int>& y_cells,
                                   int n_samples, double margin, double y_bound,
                                   uint64_t seed) {
  spec.validate();
  ClosedOneForm total = candidate.total_form();
  total.validate();
  if (total.dim() != spec.dim || grid.dim != spec.dim)
    throw InputError("verify_lyapunov: dimension mismatch");
  if (n_samples < 1) throw InputError("verify_lyapunov: n_samples must be >= 1");
  if (!(margin > 0.0)) throw InputError("verify_lyapunov: margin must be positive");
  if (y_bound < 0.0) throw InputError("verify_lyapunov: y_bound must be >= 0");
  for (int c : y_cells) {
    if (c < 0 || c >= grid.cell_count())
      throw InputError("verify_lyapunov: Y cell out of range");
  }

  std::vector<uint8_t> excluded = dilate_cells(grid, y_cells, 1);
  std::vector<uint8_t> in_y(static_cast<size_t>(grid.cell_count()), 0);
  for (int c : y_cells) in_y[static_cast<size_t>(c)] = 1;

  VerificationReport rep;
  rep.margin = margin;
  rep.y_bound = y_bound;
  rep.worst_pairing = -kInf;
  rep.worst_point = Vec(spec.dim);
  rep.y_worst_point = Vec(spec.dim);

  QuasiPoints qp(spec.dim, seed);
  for (long long j = 0; j < n_samples; ++j) {
    Vec x = qp.point(j);
    int cell = grid.cell_of_point(x);
    if (!excluded[static_cast<size_t>(cell)]) {
      double p = pair_form_with_field(total, spec, x);
      ++rep.samples_checked;
      if (p > rep.worst_pairing) {
        rep.worst_pairing = p;
        rep.worst_point = x;
      }
    }
    if (in_y[static_cast<size_t>(cell)]) {
      double v = inf_norm(total.coefficients(x));
      ++rep.y_samples;
      if (v > rep.y_sup) {
        rep.y_sup = v;
        rep.y_worst_point = x;
      }
    }
  }
  for (int c : y_cells) {
    Vec x = grid.center(c);
    double v = inf_norm(total.coefficients(x));
    ++rep.y_samples;
    if (v > rep.y_sup) {
      rep.y_sup = v;
      rep.y_worst_point = x;
    }
  }

  rep.decrease_pass = rep.samples_checked == 0 || rep.worst_pairing <= -margin;
  rep.vanishing_pass = rep.y_sup <= y_bound;

  std::ostringstream os;
  os << rep.samples_checked << " samples off the dilated Y set, worst pairing ";
  if (rep.samples_checked == 0) {
    os << "n/a (every sample fell inside the dilated Y set)";
  } else {
    os << rep.worst_pairing << " vs -" << margin;
  }
  os << "; " << rep.y_samples << " Y samples, sup |omega| = " << rep.y_sup
     << " vs " << y_bound;
  rep.notes = os.str();
  return rep;
}

}  // namespace flowforms
