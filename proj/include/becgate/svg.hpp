// Minimal SVG line/bar plots for the scenario outputs.
#pragma once

#include <string>
#include <vector>

namespace becgate {

struct PlotSeries {
  std::vector<double> x;
  std::vector<double> y;
  std::string color = "#1f77b4";
};

// Polyline plot with axes, tick labels and an optional title.
void write_line_plot_svg(const std::string& path, const std::vector<PlotSeries>& series,
                         const std::string& x_label, const std::string& y_label,
                         const std::string& title);

// Four labeled bars (the gate truth table).
void write_bar_plot_svg(const std::string& path, const std::vector<std::string>& labels,
                        const std::vector<double>& values, const std::string& y_label,
                        const std::string& title);

}  // namespace becgate
