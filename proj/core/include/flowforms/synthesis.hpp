#pragma once

#include <optional>
#include <string>
#include <vector>

#include "flowforms/asymptotic.hpp"
#include "flowforms/recurrence.hpp"

namespace flowforms {

// Result of the difference-constraint solve for the cell potential g.
struct PotentialResult {
  std::vector<double> g;  // per cell; 0 when infeasible
  bool feasible = false;
  std::optional<Cycle> witness;  // negative constraint cycle when infeasible
  std::string notes;
};

// Solves, by Bellman-Ford from a virtual source:
//   g(head) - g(tail) <= -w(e) - epsilon   edges with an endpoint outside R_xi
//   g(head) - g(tail) <= -w(e) + theta     edges inside R_xi
//   g(tail) - g(head) <=  w(e) + theta     edges inside R_xi within one
//                                          component (two-sided, so combined
//                                          weights stay near zero there)
// theta is taken from the report.  Infeasibility returns the negative
// constraint cycle; when it only uses forward arcs it is literally a cycle
// whose weight exceeds -epsilon * (its non-R_xi edge count), the margin
// version of the cycle-pairing obstruction.
PotentialResult synthesize_potential(const FlowGraph& graph,
                                     const RecurrenceReport& report,
                                     double epsilon);

// Finite Conley-type function on the condensation: with N components,
//   L(cell) = #{components that cannot reach the cell's component} / N.
// Constant on components, strictly decreasing (by at least 1/N) across every
// inter-component edge, valued in [0, 1).
std::vector<double> conley_lyapunov(const FlowGraph& graph);

struct DiscreteLyapunovData {
  std::vector<double> g;   // per cell
  std::vector<double> L;   // per cell
  double lambda = 1.0;
  double epsilon = 0.0;
  std::vector<double> w2;  // per edge: w + dg + lambda * dL
  bool feasible = false;
  std::optional<Cycle> witness;
  std::string notes;
};

// Assembles w2(e) = w(e) + g(head) - g(tail) + lambda * (L(head) - L(tail))
// and checks:
//   w2(e) <= -epsilon            edges with an endpoint outside R_xi, and
//                                edges crossing components
//   |w2(e)| <= theta + 1e-9      R_xi edges within one component
// lambda starts from 1 + max |w+dg| / |dL| over inter-component edges with
// both endpoints outside R_xi, then is raised edge by edge until every
// inter-component edge clears -epsilon (possible since dL < 0 there).
// Throws std::logic_error if L fails to drop across a component boundary.
DiscreteLyapunovData combine(const FlowGraph& graph, const std::vector<double>& g,
                             const std::vector<double>& L,
                             const RecurrenceReport& report, double epsilon);

// 0.1 * |median negative edge weight|; falls back to 0.1 * median |w| over
// all edges when no weight is negative, and to 1e-6 when all weights vanish.
double default_epsilon(const FlowGraph& graph);

struct TrigFit {
  TrigPoly poly;
  double max_residual = 0.0;
};

// Least-squares trigonometric interpolation of cell-center values with
// frequencies |k_i| <= max_frequency.  On the uniform grid the basis is
// orthogonal, so coefficients come from direct projection.
// Requires 2 * max_frequency < min resolution: at k = res/2 the cosine mode
// vanishes on every cell center and +-k alias, so the projection is only
// well posed strictly below the Nyquist index.
TrigFit fit_smooth_correction(const Grid& grid, const std::vector<double>& values,
                              int max_frequency);

struct SmoothLyapunovForm {
  ClosedOneForm base;     // the input class representative
  TrigPoly correction;    // fitted to g (subtracted)
  TrigPoly lambda_conley; // fitted to lambda * L (added)

  // base - d(correction) + d(lambda_conley); same periods as base.
  ClosedOneForm total_form() const;
};

struct VerificationReport {
  bool decrease_pass = false;  // pairing <= -margin off the dilated Y set
  double worst_pairing = 0.0;
  Vec worst_point;
  int samples_checked = 0;
  bool vanishing_pass = false;  // sup |omega| over Y samples <= y_bound
  double y_sup = 0.0;
  Vec y_worst_point;
  int y_samples = 0;
  double margin = 0.0;
  double y_bound = 0.0;
  std::string notes;

  bool pass() const { return decrease_pass && vanishing_pass; }
};

// Samples n_samples quasi-random points (plus every Y cell center).  Points
// in cells more than one cell away from Y_cells must pair with the field
// below -margin; points inside Y cells bound sup |omega_2| (the vanishing
// surrogate: the sup of the coefficient norm over Y, not neighborhood
// exactness).
VerificationReport verify_lyapunov(const TorusFlowSpec& spec,
                                   const SmoothLyapunovForm& candidate,
                                   const Grid& grid,
                                   const std::vector<int>& y_cells,
                                   int n_samples, double margin, double y_bound,
                                   uint64_t seed = 0);

}  // namespace flowforms
