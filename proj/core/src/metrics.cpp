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

#include "rmpcc/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "rmpcc/kinematics.hpp"

namespace rmpcc {
namespace {

template <typename Get>
TimingStats Stats(const TraceLog& trace, Get get) {
  TimingStats s;
  s.min = std::numeric_limits<double>::infinity();
  s.max = -std::numeric_limits<double>::infinity();
  double sum = 0.0;
  for (const TraceRecord& r : trace.records) {
    const double v = get(r);
    s.min = std::min(s.min, v);
    s.max = std::max(s.max, v);
    sum += v;
  }
  s.mean = sum / trace.records.size();
  return s;
}

}  // namespace

MetricsReport ComputeMetrics(const TraceLog& trace) {
  if (trace.records.size() < 2) throw std::invalid_argument("metrics need at least two ticks");
  MetricsReport m;
  m.ticks = static_cast<int>(trace.records.size());
  const TimingStats ax = Stats(trace, [](const TraceRecord& r) { return r.ax; });
  const TimingStats ec = Stats(trace, [](const TraceRecord& r) { return 100.0 * r.ec; });
  const TimingStats eo = Stats(trace, [](const TraceRecord& r) { return r.eo; });
  m.ax_max = ax.max;
  m.ax_mean = ax.mean;
  m.ec_max_cm = ec.max;
  m.ec_mean_cm = ec.mean;
  m.eo_max = eo.max;
  m.eo_mean = eo.mean;
  m.mu_min = Stats(trace, [](const TraceRecord& r) { return r.mu; }).min;
  m.dself_min = Stats(trace, [](const TraceRecord& r) { return r.dself; }).min;
  m.denv_min = Stats(trace, [](const TraceRecord& r) { return r.denv; }).min;
  m.s_initial = trace.records.front().s;
  m.s_final = trace.records.back().s;
  for (const TraceRecord& r : trace.records) {
    if (r.status == "infeasible_qp") ++m.infeasible_ticks;
    if (r.status == "max_iter") ++m.max_iter_ticks;
  }
  m.t_total = Stats(trace, [](const TraceRecord& r) { return r.t_total; });
  m.t_dist = Stats(trace, [](const TraceRecord& r) { return r.t_dist; });
  m.t_lin = Stats(trace, [](const TraceRecord& r) { return r.t_lin; });
  m.t_qp = Stats(trace, [](const TraceRecord& r) { return r.t_qp; });
  return m;
}

void FillEeAcceleration(const RobotModel& model, TraceLog* trace) {
  Eigen::Vector3d previous = Eigen::Vector3d::Zero();
  for (size_t k = 0; k < trace->records.size(); ++k) {
    TraceRecord& r = trace->records[k];
    const Eigen::Vector3d v = GeometricJacobian(model, r.q).topRows<3>() * r.qd;
    r.ax = k == 0 ? 0.0 : (v - previous).norm() / trace->dt;
    previous = v;
  }
}

void WriteMetrics(const MetricsReport& m, std::ostream& out) {
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  out << "ticks=" << m.ticks << '\n'
      << "ax_max=" << m.ax_max << '\n'
      << "ax_mean=" << m.ax_mean << '\n'
      << "ec_max_cm=" << m.ec_max_cm << '\n'
      << "ec_mean_cm=" << m.ec_mean_cm << '\n'
      << "eo_max=" << m.eo_max << '\n'
      << "eo_mean=" << m.eo_mean << '\n'
      << "mu_min=" << m.mu_min << '\n'
      << "dself_min=" << m.dself_min << '\n'
      << "denv_min=" << m.denv_min << '\n'
      << "s_initial=" << m.s_initial << '\n'
      << "s_final=" << m.s_final << '\n'
      << "infeasible_ticks=" << m.infeasible_ticks << '\n'
      << "max_iter_ticks=" << m.max_iter_ticks << '\n';
  auto timing = [&](const char* name, const TimingStats& s) {
    out << name << "_min_ms=" << s.min << '\n'
        << name << "_max_ms=" << s.max << '\n'
        << name << "_mean_ms=" << s.mean << '\n';
  };
  timing("T_total", m.t_total);
  timing("T_dist", m.t_dist);
  timing("T_lin", m.t_lin);
  timing("T_qp", m.t_qp);
}

std::map<std::string, double> ReadMetricsMap(std::istream& in) {
  std::map<std::string, double> values;
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw std::invalid_argument("metrics line " + std::to_string(line_number) +
                                  ": expected key=value");
    }
    const std::string value = line.substr(eq + 1);
    char* end = nullptr;
    const double v = std::strtod(value.c_str(), &end);
    if (value.empty() || end != value.c_str() + value.size()) {
      throw std::invalid_argument("metrics line " + std::to_string(line_number) +
                                  ": value is not a number");
    }
    values[line.substr(0, eq)] = v;
  }
  return values;
}

}  // namespace rmpcc
