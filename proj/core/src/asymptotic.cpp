#include "flowforms/asymptotic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "flowforms/errors.hpp"
#include "weighted_cycles.hpp"

namespace flowforms {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

ConditionReport base_report(Condition c, const FlowGraph& graph,
                            const RecurrenceReport& report) {
  ConditionReport r;
  r.condition = c;
  r.eta = kNaN;
  r.eta_per_time = kNaN;
  r.theta = report.theta;
  r.delta = graph.padding * graph.grid.spacing_max();
  r.T = graph.tau;
  return r;
}

// Component holding both R_xi and C_xi cells, or -1.  C_xi closed in the
// combinatorial sense means no such component exists.
int mixed_component(const RecurrenceReport& report) {
  int count = 0;
  for (int c : report.scc_id) count = std::max(count, c + 1);
  std::vector<char> has_rxi(static_cast<size_t>(count), 0);
  for (int v : report.R_xi)
    has_rxi[static_cast<size_t>(report.scc_id[static_cast<size_t>(v)])] = 1;
  for (int v : report.C_xi) {
    const int c = report.scc_id[static_cast<size_t>(v)];
    if (has_rxi[static_cast<size_t>(c)]) return c;
  }
  return -1;
}

std::vector<int> component_members(const RecurrenceReport& report, int comp) {
  std::vector<int> members;
  for (int v = 0; v < static_cast<int>(report.scc_id.size()); ++v)
    if (report.scc_id[static_cast<size_t>(v)] == comp) members.push_back(v);
  return members;
}

// Closed walk through one R_xi cell and one C_xi cell of a mixed component,
// witnessing that C_xi is not a union of components.
Cycle mixing_witness(const FlowGraph& graph, const RecurrenceReport& report,
                     int comp) {
  const std::vector<int> members = component_members(report, comp);
  detail::LocalGraph lg = detail::induced_subgraph(graph, members);
  int r_local = -1, c_local = -1;
  for (int i = 0; i < lg.n; ++i) {
    const int v = members[static_cast<size_t>(i)];
    const bool in_rxi = std::binary_search(report.R_xi.begin(),
                                           report.R_xi.end(), v);
    if (in_rxi && r_local < 0) r_local = i;
    if (!in_rxi && c_local < 0) c_local = i;
  }
  const auto there = detail::bfs_path(lg, r_local, c_local);
  const auto back = detail::bfs_path(lg, c_local, r_local);
  std::vector<int> edges = *there;
  edges.insert(edges.end(), back->begin(), back->end());
  return detail::to_cycle(graph, lg, edges);
}

bool fail_on_positive_cycles(const RecurrenceReport& report, ConditionReport& r) {
  if (report.positive_cycle_sccs.empty()) return false;
  r.holds = false;
  r.witness = report.positive_witnesses.front();
  r.notes =
      "a strictly positive-weight cycle exists (component " +
      std::to_string(report.positive_cycle_sccs.front()) +
      "); every cycle must pair nonpositively with the class for a Lyapunov "
      "form to exist, so the condition fails with that witness";
  return true;
}

bool fail_on_mixing(const FlowGraph& graph, const RecurrenceReport& report,
                    ConditionReport& r) {
  const int mixed = mixed_component(report);
  if (mixed < 0) return false;
  r.holds = false;
  r.witness = mixing_witness(graph, report, mixed);
  r.notes = "C_xi is not closed combinatorially: component " +
            std::to_string(mixed) +
            " contains both R_xi and C_xi cells; the witness walk passes "
            "through both sets";
  return true;
}

}  // namespace

AsymptoticCycleEstimate estimate_asymptotic_cycle(const TorusFlowSpec& spec,
                                                  const Vec& x0, double t_total,
                                                  double step) {
  if (t_total < 100.0 * step)
    throw InputError("estimate_asymptotic_cycle: t_total must be >= 100*step");
  const Trajectory traj = integrate_trajectory(spec, x0, t_total, step);
  AsymptoticCycleEstimate est;
  est.x0 = x0;
  est.t_total = traj.times.back();
  est.A = (traj.points.back() - x0) * (1.0 / est.t_total);
  const size_t half = (traj.points.size() - 1) / 2;
  const Vec a_half = (traj.points[half] - x0) * (1.0 / traj.times[half]);
  est.convergence_gap = inf_norm(est.A - a_half);
  return est;
}

double pair_class(const Vec& periods, const Vec& A) {
  if (periods.dim() != A.dim()) throw InputError("pair_class: dimension mismatch");
  return dot(periods, A);
}

MaxCycleMean max_cycle_mean_through(const FlowGraph& graph,
                                    const std::vector<int>& restrict_cells) {
  if (restrict_cells.empty())
    throw InputError("max_cycle_mean_through: restrict set is empty");
  const SccPartition part = strongly_connected_components(graph);
  std::vector<char> wanted(static_cast<size_t>(part.count), 0);
  for (int v : restrict_cells) {
    if (v < 0 || v >= graph.cell_count())
      throw InputError("max_cycle_mean_through: cell out of range");
    const int c = part.comp[static_cast<size_t>(v)];
    if (!part.has_cycle[static_cast<size_t>(c)])
      throw NotACycleError("max_cycle_mean_through: no cycle meets restrict");
    wanted[static_cast<size_t>(c)] = 1;
  }

  std::vector<detail::LocalGraph> lgs;
  double wmin = kInf, wmax = -kInf;
  for (int c = 0; c < part.count; ++c) {
    if (!wanted[static_cast<size_t>(c)]) continue;
    detail::LocalGraph lg =
        detail::induced_subgraph(graph, part.members[static_cast<size_t>(c)]);
    for (double w : lg.weights) {
      wmin = std::min(wmin, w);
      wmax = std::max(wmax, w);
    }
    lgs.push_back(std::move(lg));
  }

  double lo = wmin - 1.0;
  double hi = wmax + 1.0;
  bool have_best = false;
  MaxCycleMean best;
  auto probe = [&](double shift) {
    for (auto& lg : lgs) {
      if (auto cyc = detail::positive_cycle(lg, shift)) {
        Cycle cy = detail::to_cycle(graph, lg, *cyc);
        const double mean = cy.mean();
        if (!have_best || mean > best.mean) {
          best.mean = mean;
          best.witness = std::move(cy);
          have_best = true;
        }
        return true;
      }
    }
    return false;
  };
  while (hi - lo >= 1e-9) {
    const double mid = 0.5 * (lo + hi);
    if (probe(mid))
      lo = std::max(mid, best.mean);
    else
      hi = mid;
  }
  if (!have_best) probe(lo);
  if (!have_best)
    throw NotACycleError("max_cycle_mean_through: no cycle meets restrict");
  return best;
}

ConditionReport check_condition_II(const FlowGraph& graph,
                                   const RecurrenceReport& report) {
  ConditionReport r = base_report(Condition::II, graph, report);
  if (fail_on_positive_cycles(report, r)) return r;
  if (report.C_xi.empty()) {
    r.holds = true;
    r.notes = "C_xi is empty; the condition is vacuous";
    return r;
  }
  double best = -kInf;
  int argmax = -1;
  for (int v : report.C_xi) {
    const double m = report.m_value[static_cast<size_t>(v)];
    if (m > best) {
      best = m;
      argmax = v;
    }
  }
  r.holds = best <= -1.0;
  const std::vector<int> members =
      component_members(report, report.scc_id[static_cast<size_t>(argmax)]);
  detail::LocalGraph lg = detail::induced_subgraph(graph, members);
  const detail::CycleAnalysis ca(lg);
  int local = 0;
  while (members[static_cast<size_t>(local)] != argmax) ++local;
  r.witness = detail::to_cycle(graph, lg, ca.best_cycle(local));
  r.notes = "max cycle weight through C_xi = " + std::to_string(best) +
            (r.holds ? " <= -1" : " > -1, violated by the witness");
  return r;
}

namespace {

// Shared core of (III) and (IV): the closedness gate plus the max cycle mean
// through C_xi.
ConditionReport check_mean_condition(Condition cond, const FlowGraph& graph,
                                     const RecurrenceReport& report) {
  ConditionReport r = base_report(cond, graph, report);
  if (fail_on_positive_cycles(report, r)) return r;
  if (fail_on_mixing(graph, report, r)) return r;
  if (report.C_xi.empty()) {
    r.holds = true;
    if (cond == Condition::III) {
      r.eta = kInf;
      r.eta_per_time = kInf;
    }
    r.notes = "C_xi is empty; the condition is vacuous";
    return r;
  }
  const MaxCycleMean mcm = max_cycle_mean_through(graph, report.C_xi);
  r.holds = mcm.mean < 0.0;
  r.witness = mcm.witness;
  if (cond == Condition::III) {
    r.eta = -mcm.mean;
    r.eta_per_time = r.eta / graph.tau;
  }
  r.notes =
      "C_xi is a union of components; invariant measures are modeled as "
      "convex combinations of cycle circulations, so the measure inequality "
      "reduces to the max cycle mean through C_xi = " +
      std::to_string(mcm.mean) +
      (cond == Condition::IV
           ? "; on finite graphs this criterion coincides with the mean "
             "criterion, so (IV) and (III) agree"
           : "");
  return r;
}

}  // namespace

ConditionReport check_condition_III(const FlowGraph& graph,
                                    const RecurrenceReport& report) {
  return check_mean_condition(Condition::III, graph, report);
}

ConditionReport check_condition_IV(const FlowGraph& graph,
                                   const RecurrenceReport& report) {
  return check_mean_condition(Condition::IV, graph, report);
}

Vec circulation_asymptotic_cycle(const FlowGraph& graph, const Cycle& cycle) {
  const Cycle checked = make_cycle(graph, cycle.cells);
  return checked.displacement * (1.0 / (checked.length() * graph.tau));
}

}  // namespace flowforms
