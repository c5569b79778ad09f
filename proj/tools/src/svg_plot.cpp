// Copyright 2026 The RMPCC Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace rmpcc::tools {
namespace {

constexpr double kWidth = 760.0;
constexpr double kPanelHeight = 180.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 150.0;
constexpr double kTop = 40.0;
constexpr double kGap = 50.0;

std::string Escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string Format(double v) {
  std::ostringstream s;
  s.precision(3);
  s << v;
  return s.str();
}

}  // namespace

SvgFigure::SvgFigure(std::string title, std::vector<double> x, std::string x_label)
    : title_(std::move(title)), x_(std::move(x)), x_label_(std::move(x_label)) {}

void SvgFigure::Write(std::ostream& out) const {
  const double plot_w = kWidth - kLeft - kRight;
  const double height = kTop + panels_.size() * (kPanelHeight + kGap) + 10.0;
  double x_min = x_.empty() ? 0.0 : x_.front();
  double x_max = x_.empty() ? 1.0 : x_.back();
  if (x_max <= x_min) x_max = x_min + 1.0;

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << height << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << kWidth / 2 << "\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">"
      << Escape(title_) << "</text>\n";

  for (size_t p = 0; p < panels_.size(); ++p) {
    const Panel& panel = panels_[p];
    const double top = kTop + p * (kPanelHeight + kGap);
    double y_min = std::numeric_limits<double>::infinity();
    double y_max = -std::numeric_limits<double>::infinity();
    for (const Series& s : panel.series) {
      for (double v : s.y) {
        if (!std::isfinite(v)) continue;
        y_min = std::min(y_min, v);
        y_max = std::max(y_max, v);
      }
    }
    for (double v : panel.thresholds) {
      y_min = std::min(y_min, v);
      y_max = std::max(y_max, v);
    }
    if (!std::isfinite(y_min)) {
      y_min = 0.0;
      y_max = 1.0;
    }
    if (y_max - y_min < 1e-12) {
      y_min -= 0.5;
      y_max += 0.5;
    }
    const double pad = 0.05 * (y_max - y_min);
    y_min -= pad;
    y_max += pad;
    auto px = [&](double x) { return kLeft + (x - x_min) / (x_max - x_min) * plot_w; };
    auto py = [&](double y) { return top + (y_max - y) / (y_max - y_min) * kPanelHeight; };

    out << "<g>\n<rect x=\"" << kLeft << "\" y=\"" << top << "\" width=\"" << plot_w
        << "\" height=\"" << kPanelHeight << "\" fill=\"none\" stroke=\"#444\"/>\n";
    out << "<text x=\"" << kLeft << "\" y=\"" << top - 6 << "\">" << Escape(panel.title)
        << "</text>\n";
    out << "<text x=\"14\" y=\"" << top + kPanelHeight / 2 << "\" transform=\"rotate(-90 14 "
        << top + kPanelHeight / 2 << ")\" text-anchor=\"middle\">" << Escape(panel.y_label)
        << "</text>\n";
    for (int i = 0; i <= 4; ++i) {
      const double yv = y_min + (y_max - y_min) * i / 4.0;
      const double xv = x_min + (x_max - x_min) * i / 4.0;
      out << "<text x=\"" << kLeft - 4 << "\" y=\"" << py(yv) + 4
          << "\" text-anchor=\"end\">" << Format(yv) << "</text>\n";
      out << "<text x=\"" << px(xv) << "\" y=\"" << top + kPanelHeight + 14
          << "\" text-anchor=\"middle\">" << Format(xv) << "</text>\n";
    }
    for (double v : panel.thresholds) {
      out << "<line x1=\"" << kLeft << "\" x2=\"" << kLeft + plot_w << "\" y1=\"" << py(v)
          << "\" y2=\"" << py(v) << "\" stroke=\"#c00\" stroke-dasharray=\"5,4\"/>\n";
    }
    for (size_t k = 0; k < panel.series.size(); ++k) {
      const Series& s = panel.series[k];
      std::ostringstream d;
      bool pen_down = false;
      const size_t count = std::min(s.y.size(), x_.size());
      for (size_t i = 0; i < count; ++i) {
        if (!std::isfinite(s.y[i])) {
          pen_down = false;
          continue;
        }
        d << (pen_down ? " L" : " M") << px(x_[i]) << " " << py(s.y[i]);
        pen_down = true;
      }
      out << "<path fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.2\" d=\""
          << d.str() << "\"/>\n";
      const double ly = top + 14 + 16 * k;
      out << "<line x1=\"" << kLeft + plot_w + 10 << "\" x2=\"" << kLeft + plot_w + 30
          << "\" y1=\"" << ly - 4 << "\" y2=\"" << ly - 4 << "\" stroke=\"" << s.color
          << "\"/>\n<text x=\"" << kLeft + plot_w + 34 << "\" y=\"" << ly << "\">"
          << Escape(s.label) << "</text>\n";
    }
    out << "<text x=\"" << kLeft + plot_w / 2 << "\" y=\"" << top + kPanelHeight + 30
        << "\" text-anchor=\"middle\">" << Escape(x_label_) << "</text>\n</g>\n";
  }
  out << "</svg>\n";
}

void SvgFigure::Save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  Write(out);
  if (!out) throw std::runtime_error("error writing " + path);
}

}  // namespace rmpcc::tools
