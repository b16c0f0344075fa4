#pragma once

#include <string>
#include <vector>

#include "hmrac/simulation.hpp"

namespace hmrac::cli {

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  bool dashed = false;
  bool step = false;  // draw as a staircase (mode traces)
};

struct Panel {
  std::string ylabel;
  std::vector<Series> series;
};

struct Figure {
  std::string title;
  std::string xlabel = "t [s]";
  std::vector<Panel> panels;
};

/// Renders stacked line-plot panels into a standalone SVG document.
std::string render_svg(const Figure& fig);
void write_svg(const std::string& path, const Figure& fig);

/// Five figures: tracking.svg (states vs reference plus mode trace),
/// matched_uncertainty.svg, error_norms.svg, control.svg, weights.svg.
/// Returns the written paths.
std::vector<std::string> write_run_plots(const std::string& dir, const SimLog& log);

}  // namespace hmrac::cli
