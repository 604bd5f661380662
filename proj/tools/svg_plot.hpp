// SPDX-FileCopyrightText: (c) 2026 nullshaper contributors
//
// SPDX-License-Identifier: Apache-2.0

// Small self-contained SVG line charts for the CLI outputs.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>
#include <vector>

namespace nstool {

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

struct Chart {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<Series> series;
};

inline std::string escape_xml(const std::string &s) {
  std::string out;
  for (char c : s) {
    switch (c) {
    case '&': out += "&amp;"; break;
    case '<': out += "&lt;"; break;
    case '>': out += "&gt;"; break;
    case '"': out += "&quot;"; break;
    default: out += c;
    }
  }
  return out;
}

// "Nice" tick spacing for a span, 1/2/5 x 10^k.
inline double tick_step(double span, int target = 6) {
  if (!(span > 0.0))
    return 1.0;
  const double raw = span / target;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  const double f = raw / mag;
  return (f < 1.5 ? 1.0 : f < 3.5 ? 2.0 : f < 7.5 ? 5.0 : 10.0) * mag;
}

inline std::string render_svg(const Chart &chart) {
  constexpr double W = 720, H = 440, L = 70, R = 170, T = 40, B = 55;
  static const char *palette[] = {"#1f77b4", "#d62728", "#e6a700", "#7b3fa0",
                                  "#2ca02c", "#8c564b", "#17becf", "#555555"};

  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0;
  double y0 = x0, y1 = -x0;
  for (const auto &s : chart.series)
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i]))
        continue;
      x0 = std::min(x0, s.x[i]);
      x1 = std::max(x1, s.x[i]);
      y0 = std::min(y0, s.y[i]);
      y1 = std::max(y1, s.y[i]);
    }
  if (!std::isfinite(x0)) {
    x0 = 0;
    x1 = 1;
    y0 = 0;
    y1 = 1;
  }
  if (x1 == x0)
    x1 = x0 + 1;
  if (y1 == y0) {
    y0 -= 1;
    y1 += 1;
  }
  const double pad = 0.05 * (y1 - y0);
  y0 -= pad;
  y1 += pad;

  auto px = [&](double x) { return L + (x - x0) / (x1 - x0) * (W - L - R); };
  auto py = [&](double y) { return H - B - (y - y0) / (y1 - y0) * (H - T - B); };

  std::string out;
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%.0f\" "
                "height=\"%.0f\" font-family=\"sans-serif\" font-size=\"12\">\n",
                W, H);
  out += buf;
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  // grid and ticks
  const double xs = tick_step(x1 - x0), ys = tick_step(y1 - y0);
  for (double t = std::ceil(x0 / xs) * xs; t <= x1 + 1e-9 * xs; t += xs) {
    std::snprintf(buf, sizeof buf,
                  "<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" "
                  "stroke=\"#e0e0e0\"/>\n<text x=\"%.2f\" y=\"%.2f\" "
                  "text-anchor=\"middle\">%g</text>\n",
                  px(t), T, px(t), H - B, px(t), H - B + 16, std::abs(t) < 1e-12 * xs ? 0.0 : t);
    out += buf;
  }
  for (double t = std::ceil(y0 / ys) * ys; t <= y1 + 1e-9 * ys; t += ys) {
    std::snprintf(buf, sizeof buf,
                  "<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" "
                  "stroke=\"#e0e0e0\"/>\n<text x=\"%.2f\" y=\"%.2f\" "
                  "text-anchor=\"end\">%g</text>\n",
                  L, py(t), W - R, py(t), L - 6, py(t) + 4, std::abs(t) < 1e-12 * ys ? 0.0 : t);
    out += buf;
  }
  std::snprintf(buf, sizeof buf,
                "<rect x=\"%.2f\" y=\"%.2f\" width=\"%.2f\" height=\"%.2f\" "
                "fill=\"none\" stroke=\"black\"/>\n",
                L, T, W - L - R, H - T - B);
  out += buf;

  std::snprintf(buf, sizeof buf,
                "<text x=\"%.2f\" y=\"24\" text-anchor=\"middle\" "
                "font-size=\"14\">",
                (L + W - R) / 2);
  out += buf + escape_xml(chart.title) + "</text>\n";
  std::snprintf(buf, sizeof buf,
                "<text x=\"%.2f\" y=\"%.2f\" text-anchor=\"middle\">",
                (L + W - R) / 2, H - 14);
  out += buf + escape_xml(chart.x_label) + "</text>\n";
  std::snprintf(buf, sizeof buf,
                "<text x=\"16\" y=\"%.2f\" text-anchor=\"middle\" "
                "transform=\"rotate(-90 16 %.2f)\">",
                (T + H - B) / 2, (T + H - B) / 2);
  out += buf + escape_xml(chart.y_label) + "</text>\n";

  for (std::size_t k = 0; k < chart.series.size(); ++k) {
    const auto &s = chart.series[k];
    const char *colour = palette[k % (sizeof palette / sizeof *palette)];
    out += "<polyline fill=\"none\" stroke-width=\"1.5\" stroke=\"";
    out += colour;
    out += "\" points=\"";
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i]))
        continue;
      std::snprintf(buf, sizeof buf, "%.2f,%.2f ", px(s.x[i]), py(s.y[i]));
      out += buf;
    }
    out += "\"/>\n";
    const double ly = T + 14 + 18 * double(k);
    std::snprintf(buf, sizeof buf,
                  "<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" "
                  "stroke=\"%s\" stroke-width=\"2\"/>\n<text x=\"%.2f\" "
                  "y=\"%.2f\">",
                  W - R + 12, ly, W - R + 36, ly, colour, W - R + 42, ly + 4);
    out += buf + escape_xml(s.label) + "</text>\n";
  }
  out += "</svg>\n";
  return out;
}

} // namespace nstool
