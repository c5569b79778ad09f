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

#ifndef RMPCC_METRICS_HPP_
#define RMPCC_METRICS_HPP_

#include <istream>
#include <map>
#include <ostream>
#include <string>

#include "rmpcc/robot_model.hpp"
#include "rmpcc/trace.hpp"

namespace rmpcc {

struct TimingStats {
  double min = 0.0;
  double max = 0.0;
  double mean = 0.0;
};

struct MetricsReport {
  int ticks = 0;
  double ax_max = 0.0;  // m/s²
  double ax_mean = 0.0;
  double ec_max_cm = 0.0;
  double ec_mean_cm = 0.0;
  double eo_max = 0.0;  // rad
  double eo_mean = 0.0;
  double mu_min = 0.0;
  double dself_min = 0.0;
  double denv_min = 0.0;
  double s_initial = 0.0;
  double s_final = 0.0;
  int infeasible_ticks = 0;
  int max_iter_ticks = 0;
  TimingStats t_total;
  TimingStats t_dist;
  TimingStats t_lin;
  TimingStats t_qp;
};

// Throws std::invalid_argument with fewer than two records.
MetricsReport ComputeMetrics(const TraceLog& trace);

// Recomputes the ax column from q and qd: ‖J_pos(q_k) q̇_k - J_pos(q_{k-1})
// q̇_{k-1}‖ / dt, zero on the first record.
void FillEeAcceleration(const RobotModel& model, TraceLog* trace);

// key=value lines, 17 significant digits.
void WriteMetrics(const MetricsReport& report, std::ostream& out);
std::map<std::string, double> ReadMetricsMap(std::istream& in);

}  // namespace rmpcc

#endif  // RMPCC_METRICS_HPP_
