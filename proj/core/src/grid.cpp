#include "flowforms/grid.hpp"

#include <cmath>

#include "flowforms/errors.hpp"

namespace flowforms {

Grid::Grid(int dim_, std::array<int, 3> res_) : dim(dim_), res(res_) {
  if (dim < 1 || dim > 3) throw InputError("Grid: dim must be 1, 2 or 3");
  for (int i = 0; i < dim; ++i) {
    if (res[i] < 1) throw InputError("Grid: resolution must be >= 1 per axis");
  }
  for (int i = dim; i < 3; ++i) res[i] = 1;
}

Grid Grid::square(int dim, int n) {
  std::array<int, 3> r{n, n, n};
  return Grid(dim, r);
}

int Grid::cell_count() const {
  int c = 1;
  for (int i = 0; i < dim; ++i) c *= res[i];
  return c;
}

double Grid::spacing_max() const {
  double h = 0.0;
  for (int i = 0; i < dim; ++i) h = std::max(h, 1.0 / res[i]);
  return h;
}

int Grid::id_of(const std::array<int, 3>& idx) const {
  int id = 0;
  for (int i = dim - 1; i >= 0; --i) id = id * res[i] + idx[i];
  return id;
}

std::array<int, 3> Grid::index_of(int id) const {
  std::array<int, 3> idx{0, 0, 0};
  for (int i = 0; i < dim; ++i) {
    idx[i] = id % res[i];
    id /= res[i];
  }
  return idx;
}

int Grid::id_of_wrapped(std::array<long long, 3> idx) const {
  std::array<int, 3> w{0, 0, 0};
  for (int i = 0; i < dim; ++i) {
    long long m = idx[i] % res[i];
    if (m < 0) m += res[i];
    w[i] = static_cast<int>(m);
  }
  return id_of(w);
}

Vec Grid::center(int id) const {
  std::array<int, 3> idx = index_of(id);
  Vec c(dim);
  for (int i = 0; i < dim; ++i) c[i] = (idx[i] + 0.5) / res[i];
  return c;
}

int Grid::cell_of_point(const Vec& x) const {
  if (x.dim() != dim) throw InputError("Grid::cell_of_point: dim mismatch");
  std::array<int, 3> idx{0, 0, 0};
  for (int i = 0; i < dim; ++i) {
    double w = wrap01(x[i]);
    int k = static_cast<int>(std::floor(w * res[i]));
    if (k >= res[i]) k = res[i] - 1;
    idx[i] = k;
  }
  return id_of(idx);
}

int Grid::index_dist_sup(int a, int b) const {
  std::array<int, 3> ia = index_of(a), ib = index_of(b);
  int d = 0;
  for (int i = 0; i < dim; ++i) {
    int diff = std::abs(ia[i] - ib[i]);
    diff = std::min(diff, res[i] - diff);
    d = std::max(d, diff);
  }
  return d;
}

std::vector<uint8_t> dilate_cells(const Grid& g, const std::vector<int>& cells,
                                  int radius) {
  std::vector<uint8_t> mask(g.cell_count(), 0);
  std::array<int, 3> span{0, 0, 0};
  for (int i = 0; i < g.dim; ++i) span[i] = 2 * radius + 1;
  for (int c : cells) {
    std::array<int, 3> idx = g.index_of(c);
    int total = 1;
    for (int i = 0; i < g.dim; ++i) total *= span[i];
    for (int j = 0; j < total; ++j) {
      int r = j;
      std::array<long long, 3> nb{0, 0, 0};
      for (int i = 0; i < g.dim; ++i) {
        nb[i] = idx[i] + (r % span[i]) - radius;
        r /= span[i];
      }
      mask[g.id_of_wrapped(nb)] = 1;
    }
  }
  return mask;
}

}  // namespace flowforms
