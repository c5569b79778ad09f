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

#include "rmpcc/stage_cost.hpp"

#include <cmath>

namespace rmpcc {

StageQuadratic ToQuadratic(const StageResiduals& residuals) {
  const int nx = static_cast<int>(residuals.d_x.cols());
  const int nu = static_cast<int>(residuals.d_u.cols());
  Eigen::MatrixXd jacobian(residuals.r.size(), nx + nu);
  jacobian << residuals.d_x, residuals.d_u;
  StageQuadratic out;
  out.value = residuals.Value();
  out.gradient = 2.0 * jacobian.transpose() * residuals.r;
  out.hessian = 2.0 * jacobian.transpose() * jacobian;
  return out;
}

StageResiduals ContouringResiduals(const PathLinearization& path, const OcpState& x,
                                   const OcpInput* u, const OcpInput* u_prev,
                                   const Weights& weights) {
  const int n = static_cast<int>(x.q.size());
  const int nx = n + 2;
  const int nu = u ? n + 1 : 0;
  const int rows = 10 + (u ? 2 * n + 1 : 0);
  StageResiduals out;
  out.r = Eigen::VectorXd::Zero(rows);
  out.d_x = Eigen::MatrixXd::Zero(rows, nx);
  out.d_u = Eigen::MatrixXd::Zero(rows, nu);
  out.d_u_prev = Eigen::MatrixXd::Zero(rows, nu);

  const double sc = std::sqrt(weights.w_c);
  const double sl = std::sqrt(weights.w_l);
  const double sv = std::sqrt(weights.w_vs);
  const double so = std::sqrt(weights.w_o);
  out.r.segment<3>(0) = sc * path.errors.e_c;
  out.d_x.middleRows(0, 3) = sc * path.jacobians.de_c;
  out.r.segment<3>(3) = sl * path.errors.e_l;
  out.d_x.middleRows(3, 3) = sl * path.jacobians.de_l;
  out.r[6] = sv * (weights.v_desired - x.v_s);
  out.d_x(6, n + 1) = -sv;
  out.r.segment<3>(7) = so * path.errors.e_o;
  out.d_x.middleRows(7, 3) = so * path.jacobians.de_o;
  if (!u) return out;

  const double sqd = std::sqrt(weights.w_qd);
  const double sdq = std::sqrt(weights.w_dqd);
  const double svd = std::sqrt(weights.w_vds);
  out.r.segment(10, n) = sqd * u->qd;
  out.d_u.block(10, 0, n, n).diagonal().setConstant(sqd);
  if (u_prev) {
    out.r.segment(10 + n, n) = sdq * (u->qd - u_prev->qd);
    out.d_u.block(10 + n, 0, n, n).diagonal().setConstant(sdq);
    out.d_u_prev.block(10 + n, 0, n, n).diagonal().setConstant(-sdq);
  }
  out.r[10 + 2 * n] = svd * u->vd_s;
  out.d_u(10 + 2 * n, n) = svd;
  return out;
}

StageResiduals TrackingResiduals(const PathLinearization& path, const Eigen::VectorXd* qd,
                                 const Eigen::VectorXd* qd_prev, const Weights& weights) {
  const int n = static_cast<int>(path.jacobians.de.cols()) - 2;
  const int nu = qd ? n : 0;
  const int rows = 6 + (qd ? 2 * n : 0);
  StageResiduals out;
  out.r = Eigen::VectorXd::Zero(rows);
  out.d_x = Eigen::MatrixXd::Zero(rows, n);
  out.d_u = Eigen::MatrixXd::Zero(rows, nu);
  out.d_u_prev = Eigen::MatrixXd::Zero(rows, nu);

  const double sc = std::sqrt(weights.w_c);
  const double so = std::sqrt(weights.w_o);
  out.r.segment<3>(0) = sc * path.errors.e;
  out.d_x.middleRows(0, 3) = sc * path.jacobians.de.leftCols(n);
  out.r.segment<3>(3) = so * path.errors.e_o;
  out.d_x.middleRows(3, 3) = so * path.jacobians.de_o.leftCols(n);
  if (!qd) return out;

  const double sqd = std::sqrt(weights.w_qd);
  const double sdq = std::sqrt(weights.w_dqd);
  out.r.segment(6, n) = sqd * *qd;
  out.d_u.block(6, 0, n, n).diagonal().setConstant(sqd);
  if (qd_prev) {
    out.r.segment(6 + n, n) = sdq * (*qd - *qd_prev);
    out.d_u.block(6 + n, 0, n, n).diagonal().setConstant(sdq);
    out.d_u_prev.block(6 + n, 0, n, n).diagonal().setConstant(-sdq);
  }
  return out;
}

}  // namespace rmpcc
