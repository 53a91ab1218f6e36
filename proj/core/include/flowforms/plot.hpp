#pragma once

#include <string>
#include <vector>

#include "flowforms/grid.hpp"

namespace flowforms {

// SVG 1.1 overlay of the recurrence partition on a 2-d grid: chain-recurrent
// cells gray, R_xi black, C_xi red, everything else white.  Deterministic
// byte-for-byte.  Throws InputError unless grid.dim == 2.
std::string svg_cell_overlay(const Grid& grid, const std::vector<int>& R,
                             const std::vector<int>& R_xi,
                             const std::vector<int>& C_xi);

// SVG 1.1 heatmap of one value per cell, diverging blue/white/red around 0.
// Throws InputError unless grid.dim == 2.
std::string svg_heatmap(const Grid& grid, const std::vector<double>& values,
                        const std::string& title);

// Binary PGM (P5), one gray pixel per cell, values scaled to [0, 255].
// Throws InputError unless grid.dim == 2.
std::string pgm_heatmap(const Grid& grid, const std::vector<double>& values);

}  // namespace flowforms
