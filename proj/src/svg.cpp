#include "scl/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "scl/errors.hpp"

namespace scl {

namespace {

constexpr Scalar kWidth = 640.0, kHeight = 440.0;
constexpr Scalar kLeft = 64.0, kRight = 608.0, kTop = 48.0, kBottom = 392.0;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b"};

std::string num(Scalar v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string coord(Scalar v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Range {
  Scalar lo = 0.0, hi = 1.0;
  void expand(Scalar v) {
    if (!std::isfinite(v)) return;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  // Degenerate spans widen symmetrically so the map below stays finite.
  void finalize() {
    if (!(hi > lo)) {
      lo -= 0.5;
      hi += 0.5;
    }
  }
  Scalar map(Scalar v, Scalar out_lo, Scalar out_hi) const {
    return out_lo + (v - lo) / (hi - lo) * (out_hi - out_lo);
  }
};

std::string header(const std::string& title) {
  std::string s;
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kWidth) +
       "\" height=\"" + num(kHeight) + "\" viewBox=\"0 0 " + num(kWidth) + " " +
       num(kHeight) + "\">\n";
  s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  s += "<text x=\"" + coord(kWidth / 2) +
       "\" y=\"24\" text-anchor=\"middle\" font-family=\"monospace\" "
       "font-size=\"14\">" +
       escape(title) + "</text>\n";
  return s;
}

std::string axes(const std::string& x_label, const std::string& y_label) {
  std::string s;
  s += "<line x1=\"" + coord(kLeft) + "\" y1=\"" + coord(kBottom) + "\" x2=\"" +
       coord(kRight) + "\" y2=\"" + coord(kBottom) +
       "\" stroke=\"black\" stroke-width=\"1\"/>\n";
  s += "<line x1=\"" + coord(kLeft) + "\" y1=\"" + coord(kTop) + "\" x2=\"" +
       coord(kLeft) + "\" y2=\"" + coord(kBottom) +
       "\" stroke=\"black\" stroke-width=\"1\"/>\n";
  s += "<text x=\"" + coord((kLeft + kRight) / 2) + "\" y=\"" +
       coord(kHeight - 10) +
       "\" text-anchor=\"middle\" font-family=\"monospace\" font-size=\"12\">" +
       escape(x_label) + "</text>\n";
  s += "<text x=\"16\" y=\"" + coord((kTop + kBottom) / 2) +
       "\" text-anchor=\"middle\" font-family=\"monospace\" font-size=\"12\" "
       "transform=\"rotate(-90 16 " +
       coord((kTop + kBottom) / 2) + ")\">" + escape(y_label) + "</text>\n";
  return s;
}

}  // namespace

std::string svg_line_chart(const std::string& title, const std::string& x_label,
                           const std::string& y_label,
                           const std::vector<Series>& series) {
  if (series.empty()) throw ContractError("svg_line_chart: need at least one series");
  Range xr, yr;
  bool any = false;
  for (const Series& s : series)
    for (const auto& [x, y] : s.points) {
      if (!any) {
        xr.lo = xr.hi = x;
        yr.lo = yr.hi = y;
        any = true;
      }
      xr.expand(x);
      yr.expand(y);
    }
  if (!any) throw ContractError("svg_line_chart: all series are empty");
  xr.finalize();
  yr.finalize();

  std::string s = header(title) + axes(x_label, y_label);
  for (int k = 0; k <= 4; ++k) {
    const Scalar fx = xr.lo + (xr.hi - xr.lo) * k / 4.0;
    const Scalar fy = yr.lo + (yr.hi - yr.lo) * k / 4.0;
    const Scalar px = xr.map(fx, kLeft, kRight);
    const Scalar py = yr.map(fy, kBottom, kTop);
    s += "<line x1=\"" + coord(px) + "\" y1=\"" + coord(kBottom) + "\" x2=\"" +
         coord(px) + "\" y2=\"" + coord(kBottom + 4) + "\" stroke=\"black\"/>\n";
    s += "<text x=\"" + coord(px) + "\" y=\"" + coord(kBottom + 18) +
         "\" text-anchor=\"middle\" font-family=\"monospace\" font-size=\"10\">" +
         num(fx) + "</text>\n";
    s += "<line x1=\"" + coord(kLeft - 4) + "\" y1=\"" + coord(py) + "\" x2=\"" +
         coord(kLeft) + "\" y2=\"" + coord(py) + "\" stroke=\"black\"/>\n";
    s += "<text x=\"" + coord(kLeft - 6) + "\" y=\"" + coord(py + 3) +
         "\" text-anchor=\"end\" font-family=\"monospace\" font-size=\"10\">" +
         num(fy) + "</text>\n";
  }
  for (std::size_t i = 0; i < series.size(); ++i) {
    const char* color = kPalette[i % 6];
    if (!series[i].points.empty()) {
      std::string pts;
      for (const auto& [x, y] : series[i].points) {
        pts += coord(xr.map(x, kLeft, kRight)) + "," +
               coord(yr.map(y, kBottom, kTop)) + " ";
      }
      s += "<polyline fill=\"none\" stroke=\"" + std::string(color) +
           "\" stroke-width=\"1.5\" points=\"" + pts + "\"/>\n";
      for (const auto& [x, y] : series[i].points)
        s += "<circle cx=\"" + coord(xr.map(x, kLeft, kRight)) + "\" cy=\"" +
             coord(yr.map(y, kBottom, kTop)) + "\" r=\"2.5\" fill=\"" + color +
             "\"/>\n";
    }
    const Scalar ly = kTop + 14.0 * static_cast<Scalar>(i);
    s += "<rect x=\"" + coord(kRight - 150) + "\" y=\"" + coord(ly - 8) +
         "\" width=\"10\" height=\"10\" fill=\"" + color + "\"/>\n";
    s += "<text x=\"" + coord(kRight - 136) + "\" y=\"" + coord(ly) +
         "\" font-family=\"monospace\" font-size=\"10\">" +
         escape(series[i].label) + "</text>\n";
  }
  s += "</svg>\n";
  return s;
}

std::string svg_heatmap(const std::string& title, const std::string& x_label,
                        const std::string& y_label, const std::vector<Scalar>& x_ticks,
                        const std::vector<Scalar>& y_ticks, const Matrix& values) {
  const Index rows = values.rows(), cols = values.cols();
  if (rows < 1 || cols < 1) throw ContractError("svg_heatmap: empty value grid");
  if (static_cast<Index>(y_ticks.size()) != rows ||
      static_cast<Index>(x_ticks.size()) != cols)
    throw ContractError("svg_heatmap: tick counts must match the grid");

  Scalar lo = values(0, 0), hi = values(0, 0);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) {
      lo = std::min(lo, values(i, j));
      hi = std::max(hi, values(i, j));
    }
  const Scalar span = hi > lo ? hi - lo : 1.0;

  std::string s = header(title) + axes(x_label, y_label);
  const Scalar cw = (kRight - kLeft) / static_cast<Scalar>(cols);
  const Scalar ch = (kBottom - kTop) / static_cast<Scalar>(rows);
  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < cols; ++j) {
      const Scalar f = (values(i, j) - lo) / span;
      const int r = static_cast<int>(std::lround(255.0 * f));
      const int b = 255 - r;
      char color[16];
      std::snprintf(color, sizeof color, "#%02x40%02x", r, b);
      // row 0 at the bottom so y increases upward like the axis
      const Scalar x0 = kLeft + cw * static_cast<Scalar>(j);
      const Scalar y0 = kBottom - ch * static_cast<Scalar>(i + 1);
      s += "<rect x=\"" + coord(x0) + "\" y=\"" + coord(y0) + "\" width=\"" +
           coord(cw) + "\" height=\"" + coord(ch) + "\" fill=\"" + color + "\"/>\n";
    }
  }
  for (Index j = 0; j < cols; ++j) {
    s += "<text x=\"" + coord(kLeft + cw * (static_cast<Scalar>(j) + 0.5)) +
         "\" y=\"" + coord(kBottom + 14) +
         "\" text-anchor=\"middle\" font-family=\"monospace\" font-size=\"10\">" +
         num(x_ticks[static_cast<std::size_t>(j)]) + "</text>\n";
  }
  for (Index i = 0; i < rows; ++i) {
    s += "<text x=\"" + coord(kLeft - 6) + "\" y=\"" +
         coord(kBottom - ch * (static_cast<Scalar>(i) + 0.5) + 3) +
         "\" text-anchor=\"end\" font-family=\"monospace\" font-size=\"10\">" +
         num(y_ticks[static_cast<std::size_t>(i)]) + "</text>\n";
  }
  s += "<text x=\"" + coord(kRight) + "\" y=\"" + coord(kTop - 8) +
       "\" text-anchor=\"end\" font-family=\"monospace\" font-size=\"10\">min=" +
       num(lo) + " max=" + num(hi) + "</text>\n";
  s += "</svg>\n";
  return s;
}

}  // namespace scl
