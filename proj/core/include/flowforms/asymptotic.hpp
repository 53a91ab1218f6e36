#pragma once

#include <optional>
#include <string>
#include <vector>

#include "flowforms/recurrence.hpp"

namespace flowforms {

// Time-averaged winding of a single trajectory; A estimates the class in
// H_1(T^n; R) of the orbit's limiting measure.
struct AsymptoticCycleEstimate {
  Vec A;
  double t_total = 0.0;
  Vec x0;
  // Sup-norm gap between the estimates over [0, t] and [0, t/2]; small gaps
  // suggest (but never certify) convergence.
  double convergence_gap = 0.0;
};

// Requires t_total >= 100 * step.
AsymptoticCycleEstimate estimate_asymptotic_cycle(const TorusFlowSpec& spec,
                                                  const Vec& x0, double t_total,
                                                  double step);

// <periods, A>.
double pair_class(const Vec& periods, const Vec& A);

struct MaxCycleMean {
  double mean = 0.0;
  Cycle witness;  // attains `mean` exactly
};

// Largest weight/length over directed cycles meeting `restrict`, located by
// binary search on the mean (subtract a trial mean from every edge, look for
// a shifted-positive cycle among the components meeting `restrict`).
//
// Cycles are resolved at component granularity: the search is exact when
// `restrict` is a union of strongly connected components (the only shape the
// condition checks produce); for other sets the witness may pass near, not
// through, a requested cell.  Throws NotACycleError when no cycle meets
// `restrict`; InputError on an empty set.
MaxCycleMean max_cycle_mean_through(const FlowGraph& graph,
                                    const std::vector<int>& restrict_cells);

enum class Condition { II, III, IV };

struct ConditionReport {
  Condition condition = Condition::II;
  bool holds = false;
  double eta = 0.0;           // III only: -max cycle mean through C_xi;
                              // +inf when C_xi is empty, NaN elsewhere
  double eta_per_time = 0.0;  // eta / tau
  std::optional<Cycle> witness;
  double theta = 0.0;
  double delta = 0.0;  // padding * grid spacing
  double T = 0.0;      // tau
  std::string notes;
};

// (II): every cycle meeting C_xi has weight <= -1.
// (III): C_xi is a union of components and the max cycle mean through it is
//        -eta < 0.
// (IV): C_xi is a union of components and every cycle meeting it has
//        strictly negative weight; on finite graphs this is equivalent to
//        (III) and the report records the agreement.
// All three fail, with the stored witness, whenever the recurrence report
// carries a positive-weight cycle: no form in the class can decrease along
// such a cycle, so the conditions are unsatisfiable and silence would hide
// the obstruction.
ConditionReport check_condition_II(const FlowGraph& graph,
                                   const RecurrenceReport& report);
ConditionReport check_condition_III(const FlowGraph& graph,
                                    const RecurrenceReport& report);
ConditionReport check_condition_IV(const FlowGraph& graph,
                                   const RecurrenceReport& report);

// Homology class per unit time of a cycle circulation:
// sum of displacements / (length * tau).
Vec circulation_asymptotic_cycle(const FlowGraph& graph, const Cycle& cycle);

}  // namespace flowforms
