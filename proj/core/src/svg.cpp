#include "corpus_scope/svg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

namespace corpus_scope::svg {
namespace {

constexpr double kWidth = 800;
constexpr double kHeight = 500;
constexpr double kLeft = 70;
constexpr double kRight = 30;
constexpr double kTop = 50;
constexpr double kBottom = 60;

struct Frame {
  double x_min, x_max, y_min, y_max;

  double px(double x) const {
    return kLeft + (x - x_min) / (x_max - x_min) * (kWidth - kLeft - kRight);
  }
  double py(double y) const {
    return kHeight - kBottom - (y - y_min) / (y_max - y_min) * (kHeight - kTop - kBottom);
  }
};

Frame frame_for(const std::vector<std::pair<double, double>>& pts, bool include_zero_y) {
  Frame f{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity(),
          std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  for (const auto& [x, y] : pts) {
    f.x_min = std::min(f.x_min, x);
    f.x_max = std::max(f.x_max, x);
    f.y_min = std::min(f.y_min, y);
    f.y_max = std::max(f.y_max, y);
  }
  if (pts.empty()) f = {0, 1, 0, 1};
  if (include_zero_y) f.y_min = std::min(f.y_min, 0.0);
  if (f.x_max - f.x_min < 1e-12) {
    f.x_min -= 1;
    f.x_max += 1;
  }
  if (f.y_max - f.y_min < 1e-12) {
    f.y_min -= 1;
    f.y_max += 1;
  }
  const double pad_x = 0.05 * (f.x_max - f.x_min);
  const double pad_y = 0.05 * (f.y_max - f.y_min);
  return {f.x_min - pad_x, f.x_max + pad_x, include_zero_y ? f.y_min : f.y_min - pad_y,
          f.y_max + pad_y};
}

std::string header(const std::string& title, const std::string& x_label,
                   const std::string& y_label, const Frame& f) {
  std::string out = fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{1}\" "
      "viewBox=\"0 0 {0} {1}\" font-family=\"sans-serif\" font-size=\"12\">\n",
      kWidth, kHeight);
  out += fmt::format("<rect width=\"{}\" height=\"{}\" fill=\"white\"/>\n", kWidth, kHeight);
  out += fmt::format("<text x=\"{:.2f}\" y=\"28\" text-anchor=\"middle\" font-size=\"16\">{}</text>\n",
                     kWidth / 2, escape(title));
  const double x0 = kLeft;
  const double x1 = kWidth - kRight;
  const double y0 = kHeight - kBottom;
  const double y1 = kTop;
  out += fmt::format("<line x1=\"{:.2f}\" y1=\"{:.2f}\" x2=\"{:.2f}\" y2=\"{:.2f}\" stroke=\"black\"/>\n",
                     x0, y0, x1, y0);
  out += fmt::format("<line x1=\"{:.2f}\" y1=\"{:.2f}\" x2=\"{:.2f}\" y2=\"{:.2f}\" stroke=\"black\"/>\n",
                     x0, y0, x0, y1);
  for (int i = 0; i <= 4; ++i) {
    const double xv = f.x_min + (f.x_max - f.x_min) * i / 4.0;
    const double yv = f.y_min + (f.y_max - f.y_min) * i / 4.0;
    out += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"middle\">{:.4g}</text>\n",
                       f.px(xv), y0 + 18, xv);
    out += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"end\">{:.4g}</text>\n",
                       x0 - 6, f.py(yv) + 4, yv);
  }
  out += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"middle\">{}</text>\n",
                     (x0 + x1) / 2, kHeight - 15, escape(x_label));
  out += fmt::format(
      "<text x=\"18\" y=\"{:.2f}\" text-anchor=\"middle\" transform=\"rotate(-90 18 {:.2f})\">{}</text>\n",
      (y0 + y1) / 2, (y0 + y1) / 2, escape(y_label));
  return out;
}

}  // namespace

std::string escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

std::string line_chart(const std::string& title, const std::string& x_label,
                       const std::string& y_label, const std::vector<Series>& series) {
  std::vector<std::pair<double, double>> all;
  for (const auto& s : series) all.insert(all.end(), s.points.begin(), s.points.end());
  const Frame f = frame_for(all, true);
  std::string out = header(title, x_label, y_label, f);

  double legend_y = kTop + 5;
  for (const auto& s : series) {
    if (s.line && s.points.size() > 1) {
      out += "<polyline fill=\"none\" stroke-width=\"2\" stroke=\"" + escape(s.color) + "\" points=\"";
      for (std::size_t i = 0; i < s.points.size(); ++i) {
        if (i > 0) out.push_back(' ');
        out += fmt::format("{:.2f},{:.2f}", f.px(s.points[i].first), f.py(s.points[i].second));
      }
      out += "\"/>\n";
    }
    if (s.markers || s.points.size() == 1) {
      for (const auto& [x, y] : s.points) {
        out += fmt::format("<circle cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"4\" fill=\"{}\"/>\n", f.px(x),
                           f.py(y), escape(s.color));
      }
    }
    out += fmt::format("<rect x=\"{:.2f}\" y=\"{:.2f}\" width=\"12\" height=\"12\" fill=\"{}\"/>\n",
                       kLeft + 15, legend_y, escape(s.color));
    out += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\">{}</text>\n", kLeft + 32, legend_y + 10,
                       escape(s.name));
    legend_y += 18;
  }
  out += "</svg>\n";
  return out;
}

std::string scatter_plot(const std::string& title, const std::string& x_label,
                         const std::string& y_label, const std::vector<ScatterPoint>& points) {
  std::vector<std::pair<double, double>> all;
  all.reserve(points.size());
  for (const auto& p : points) all.emplace_back(p.x, p.y);
  const Frame f = frame_for(all, false);
  std::string out = header(title, x_label, y_label, f);
  if (f.y_min < 0 && f.y_max > 0) {
    out += fmt::format(
        "<line x1=\"{:.2f}\" y1=\"{:.2f}\" x2=\"{:.2f}\" y2=\"{:.2f}\" stroke=\"#bbbbbb\" stroke-dasharray=\"4 4\"/>\n",
        kLeft, f.py(0), kWidth - kRight, f.py(0));
  }
  if (f.x_min < 0 && f.x_max > 0) {
    out += fmt::format(
        "<line x1=\"{:.2f}\" y1=\"{:.2f}\" x2=\"{:.2f}\" y2=\"{:.2f}\" stroke=\"#bbbbbb\" stroke-dasharray=\"4 4\"/>\n",
        f.px(0), kTop, f.px(0), kHeight - kBottom);
  }
  for (const auto& p : points) {
    out += fmt::format("<circle cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"3\" fill=\"{}\" fill-opacity=\"0.6\"/>\n",
                       f.px(p.x), f.py(p.y), escape(p.color));
  }
  for (const auto& p : points) {
    if (!p.show_label) continue;
    out += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\">{}</text>\n", f.px(p.x) + 5, f.py(p.y) - 5,
                       escape(p.label));
  }
  out += "</svg>\n";
  return out;
}

}  // namespace corpus_scope::svg
