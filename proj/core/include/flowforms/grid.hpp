#pragma once

#include <array>
#include <vector>

#include "flowforms/vec.hpp"

namespace flowforms {

// Uniform cubical grid on T^n.  Cell (k_0,...,k_{n-1}) covers
// prod_i [k_i/N_i, (k_i+1)/N_i); ids are row-major with axis 0 fastest.
struct Grid {
  int dim = 0;
  std::array<int, 3> res{0, 0, 0};

  Grid() = default;
  Grid(int dim_, std::array<int, 3> res_);
  static Grid square(int dim, int n);

  int cell_count() const;
  // Longest cell edge, max_i 1/N_i.
  double spacing_max() const;

  int id_of(const std::array<int, 3>& idx) const;
  std::array<int, 3> index_of(int id) const;
  // Wraps an integer index vector componentwise into range.
  int id_of_wrapped(std::array<long long, 3> idx) const;

  Vec center(int id) const;
  // Cell containing the wrap of an arbitrary cover point.
  int cell_of_point(const Vec& x) const;

  // Sup-norm distance between two cells in index units (wrapped).
  int index_dist_sup(int a, int b) const;
};

// Dilate a cell set by `radius` cells in the sup-norm (wrapped); returns a
// mask over all cells.
std::vector<uint8_t> dilate_cells(const Grid& g, const std::vector<int>& cells,
                                  int radius);

}  // namespace flowforms
