#pragma once

#include <string>
#include <utility>
#include <vector>

#include "scl/types.hpp"

// Minimal self-contained SVG emitters. They draw exactly the numbers they are given
// and never compute statistics; output is deterministic text on a fixed canvas.
namespace scl {

struct Series {
  std::string label;
  std::vector<std::pair<Scalar, Scalar>> points;  // (x, y), drawn in order
};

std::string svg_line_chart(const std::string& title, const std::string& x_label,
                           const std::string& y_label,
                           const std::vector<Series>& series);

// values(i, j) is the cell at y_ticks[i], x_ticks[j]; colors ramp blue (min) to
// red (max) over the finite range of the grid.
std::string svg_heatmap(const std::string& title, const std::string& x_label,
                        const std::string& y_label, const std::vector<Scalar>& x_ticks,
                        const std::vector<Scalar>& y_ticks, const Matrix& values);

}  // namespace scl
