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

#ifndef RMPCC_TOOLS_SVG_PLOT_HPP_
#define RMPCC_TOOLS_SVG_PLOT_HPP_

#include <ostream>
#include <string>
#include <vector>

namespace rmpcc::tools {

struct Series {
  std::string label;
  std::string color;
  std::vector<double> y;
};

struct Panel {
  std::string title;
  std::string y_label;
  std::vector<Series> series;
  // Dashed horizontal reference lines, e.g. safety thresholds.
  std::vector<double> thresholds;
};

// Static multi-panel line chart over a shared x axis. Non-finite samples
// break the polyline.
class SvgFigure {
 public:
  SvgFigure(std::string title, std::vector<double> x, std::string x_label);
  void AddPanel(Panel panel) { panels_.push_back(std::move(panel)); }
  void Write(std::ostream& out) const;
  // Throws std::runtime_error if the file cannot be written.
  void Save(const std::string& path) const;

 private:
  std::string title_;
  std::vector<double> x_;
  std::string x_label_;
  std::vector<Panel> panels_;
};

}  // namespace rmpcc::tools

#endif  // RMPCC_TOOLS_SVG_PLOT_HPP_
