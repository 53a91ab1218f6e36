#pragma once

#include <string>

#include "flowforms/flow.hpp"

namespace flowforms {

// (sqrt(5)-1)/2: slope of the irrational linear flow preset.
inline constexpr double kGoldenConj = 0.61803398874989484820458683436563811772;

// V = 0.
TorusFlowSpec preset_zero(int dim = 2);

// V = (1, a, a^2)[:dim] with a = kGoldenConj; minimal for dim = 2.
TorusFlowSpec preset_linear(int dim = 2);

// V = -grad F with F(x) = sum_i cos(2 pi x_i).  Fixed points at the
// corners of the half-integer lattice; attractor at (1/2, ..., 1/2).
TorusFlowSpec preset_morse_gradient(int dim = 2);

// Unit x_1 speed, contraction of the other axes onto the circle
// x_j = 0:  V = (1, -b sin(2 pi x_2), ...), b = 1/4.  One attracting
// periodic orbit of period 1 winding (1, 0, ..., 0); a repelling orbit
// sits at x_j = 1/2.
TorusFlowSpec preset_periodic_orbit(int dim = 2);

// Lookup by name: "zero", "linear", "morse", "periodic_orbit".
// Throws InputError for unknown names.
TorusFlowSpec preset_by_name(const std::string& name, int dim = 2);

// The Morse potential F used by preset_morse_gradient.
TrigPoly morse_potential(int dim = 2);

// omega = sign * dx_axis (no potential part).
ClosedOneForm form_dx(int dim, int axis, double sign = 1.0);

}  // namespace flowforms
