#pragma once

#include <string>
#include <utility>
#include <vector>

// Small standalone SVG charts. Output depends only on the inputs (fixed
// canvas, two-decimal coordinates), so files are byte-stable across runs.
namespace corpus_scope::svg {

struct Series {
  std::string name;
  std::string color;
  std::vector<std::pair<double, double>> points;
  bool line = true;
  bool markers = false;
};

std::string line_chart(const std::string& title, const std::string& x_label,
                       const std::string& y_label, const std::vector<Series>& series);

struct ScatterPoint {
  double x = 0;
  double y = 0;
  std::string label;
  bool show_label = false;
  std::string color = "#1f77b4";
};

std::string scatter_plot(const std::string& title, const std::string& x_label,
                         const std::string& y_label, const std::vector<ScatterPoint>& points);

std::string escape(const std::string& text);

}  // namespace corpus_scope::svg
