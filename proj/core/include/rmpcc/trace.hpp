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

#ifndef RMPCC_TRACE_HPP_
#define RMPCC_TRACE_HPP_

#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace rmpcc {

// One control tick. Joint state is logged before the input is applied; qd is
// the input applied during the tick.
struct TraceRecord {
  double t = 0.0;
  Eigen::VectorXd q;
  Eigen::VectorXd qd;
  double s = 0.0;
  double vs = 0.0;
  double vds = 0.0;
  double ec = 0.0;   // ‖e_c‖, m
  double eo = 0.0;   // ‖e_o‖, rad
  double mu = 0.0;
  double dself = 0.0;
  double denv = 0.0;  // surface clearance to the obstacle, m; inf without one
  double ax = 0.0;    // ‖Δ(J_pos q̇)‖ / dt, m/s²
  std::string status;
  double t_total = 0.0;  // ms
  double t_dist = 0.0;
  double t_lin = 0.0;
  double t_qp = 0.0;
  // Worst QP KKT residual of the tick; not part of the CSV.
  double kkt = 0.0;
};

struct TraceLog {
  int dof = 0;
  double dt = 0.0;
  std::vector<TraceRecord> records;
};

// Header `t,q1..qn,qd1..qdn,s,vs,vds,ec,eo,mu,dself,denv,ax,status,T_total,
// T_dist,T_lin,T_qp`.
std::string TraceHeader(int dof);

// Values are written with 17 significant digits, so reading a written trace
// reproduces it exactly.
void WriteTraceCsv(const TraceLog& trace, std::ostream& out);
void SaveTraceCsv(const TraceLog& trace, const std::string& path);

// Throws std::invalid_argument naming the line on a malformed header or row;
// std::runtime_error when the file cannot be read.
TraceLog ReadTraceCsv(std::istream& in);
TraceLog LoadTraceCsv(const std::string& path);

}  // namespace rmpcc

#endif  // RMPCC_TRACE_HPP_
