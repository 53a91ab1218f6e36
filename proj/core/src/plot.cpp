#include "flowforms/plot.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "flowforms/errors.hpp"

namespace flowforms {

namespace {

void require_2d(const Grid& grid, const char* what) {
  if (grid.dim != 2)
    throw InputError(std::string(what) + ": only 2-d grids can be drawn");
  if (grid.cell_count() <= 0) throw InputError(std::string(what) + ": empty grid");
}

int cell_scale(const Grid& grid) {
  int res_max = std::max(grid.res[0], grid.res[1]);
  return std::max(1, 640 / res_max);
}

std::string svg_open(const Grid& grid, int scale) {
  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\""
     << grid.res[0] * scale << "\" height=\"" << grid.res[1] * scale
     << "\" viewBox=\"0 0 " << grid.res[0] * scale << ' ' << grid.res[1] * scale
     << "\">\n";
  return os.str();
}

// SVG y axis points down; flip so x_1 increases upward.
void rect(std::ostringstream& os, const Grid& grid, int scale, int cell,
          const std::string& fill) {
  std::array<int, 3> idx = grid.index_of(cell);
  os << "<rect x=\"" << idx[0] * scale << "\" y=\""
     << (grid.res[1] - 1 - idx[1]) * scale << "\" width=\"" << scale
     << "\" height=\"" << scale << "\" fill=\"" << fill << "\"/>\n";
}

}  // namespace

std::string svg_cell_overlay(const Grid& grid, const std::vector<int>& R,
                             const std::vector<int>& R_xi,
                             const std::vector<int>& C_xi) {
  require_2d(grid, "svg_cell_overlay");
  const int scale = cell_scale(grid);
  std::vector<char> mark(static_cast<size_t>(grid.cell_count()), 0);
  for (int c : R) mark[static_cast<size_t>(c)] = 1;
  for (int c : C_xi) mark[static_cast<size_t>(c)] = 2;
  for (int c : R_xi) mark[static_cast<size_t>(c)] = 3;

  std::ostringstream os;
  os << svg_open(grid, scale);
  os << "<rect x=\"0\" y=\"0\" width=\"" << grid.res[0] * scale << "\" height=\""
     << grid.res[1] * scale << "\" fill=\"#ffffff\"/>\n";
  for (int c = 0; c < grid.cell_count(); ++c) {
    switch (mark[static_cast<size_t>(c)]) {
      case 1:
        rect(os, grid, scale, c, "#b4b4b4");
        break;
      case 2:
        rect(os, grid, scale, c, "#d03030");
        break;
      case 3:
        rect(os, grid, scale, c, "#000000");
        break;
      default:
        break;
    }
  }
  os << "</svg>\n";
  return os.str();
}

std::string svg_heatmap(const Grid& grid, const std::vector<double>& values,
                        const std::string& title) {
  require_2d(grid, "svg_heatmap");
  if (static_cast<int>(values.size()) != grid.cell_count())
    throw InputError("svg_heatmap: one value per cell required");
  const int scale = cell_scale(grid);
  double amax = 0.0;
  for (double v : values) {
    if (std::isfinite(v)) amax = std::max(amax, std::fabs(v));
  }
  if (amax == 0.0) amax = 1.0;

  std::ostringstream os;
  os << svg_open(grid, scale);
  if (!title.empty()) os << "<title>" << title << "</title>\n";
  for (int c = 0; c < grid.cell_count(); ++c) {
    double v = values[static_cast<size_t>(c)];
    if (!std::isfinite(v)) v = v > 0 ? amax : -amax;
    double t = std::clamp(v / amax, -1.0, 1.0);
    int r, g, b;
    if (t < 0) {  // toward blue
      r = static_cast<int>(std::lround(255 * (1.0 + t)));
      g = r;
      b = 255;
    } else {  // toward red
      r = 255;
      g = static_cast<int>(std::lround(255 * (1.0 - t)));
      b = g;
    }
    std::ostringstream fill;
    fill << "rgb(" << r << ',' << g << ',' << b << ')';
    rect(os, grid, scale, c, fill.str());
  }
  os << "</svg>\n";
  return os.str();
}

std::string pgm_heatmap(const Grid& grid, const std::vector<double>& values) {
  require_2d(grid, "pgm_heatmap");
  if (static_cast<int>(values.size()) != grid.cell_count())
    throw InputError("pgm_heatmap: one value per cell required");
  double lo = 0.0, hi = 0.0;
  bool first = true;
  for (double v : values) {
    if (!std::isfinite(v)) continue;
    if (first || v < lo) lo = v;
    if (first || v > hi) hi = v;
    first = false;
  }
  if (first || hi <= lo) hi = lo + 1.0;

  std::ostringstream os;
  os << "P5\n" << grid.res[0] << ' ' << grid.res[1] << "\n255\n";
  for (int row = grid.res[1] - 1; row >= 0; --row) {
    for (int col = 0; col < grid.res[0]; ++col) {
      int cell = grid.id_of({col, row, 0});
      double v = values[static_cast<size_t>(cell)];
      if (!std::isfinite(v)) v = v > 0 ? hi : lo;
      int gray = static_cast<int>(std::lround(255.0 * (v - lo) / (hi - lo)));
      os << static_cast<char>(std::clamp(gray, 0, 255));
    }
  }
  return os.str();
}

}  // namespace flowforms
