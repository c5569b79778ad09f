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

#ifndef RMPCC_STAGE_COST_HPP_
#define RMPCC_STAGE_COST_HPP_

#include <Eigen/Core>

#include "rmpcc/ocp.hpp"
#include "rmpcc/path_errors.hpp"

namespace rmpcc {

// A stage cost in least-squares form, value = ‖r‖², with r linearized as
//   r + d_x δx + d_u δu_k + d_u_prev δu_{k-1}.
// Weights are folded in as square roots.
struct StageResiduals {
  Eigen::VectorXd r;
  Eigen::MatrixXd d_x;
  Eigen::MatrixXd d_u;       // zero columns for the terminal stage
  Eigen::MatrixXd d_u_prev;  // zero-valued when there is no previous input

  double Value() const { return r.squaredNorm(); }
};

// Value, gradient and Gauss-Newton Hessian over z = [x; u], u_prev fixed.
struct StageQuadratic {
  double value = 0.0;
  Eigen::VectorXd gradient;
  Eigen::MatrixXd hessian;
};

StageQuadratic ToQuadratic(const StageResiduals& residuals);

// Contouring stage cost
//   w_c‖e_c‖² + w_l‖e_l‖² + w_vs (v_desired - v_s)² + w_o‖e_o‖²
//   + w_qd‖q̇‖² + w_dqd‖q̇ - q̇_prev‖² + w_vds v̇_s²
// with the input terms omitted when `u` is null (terminal stage) and the
// difference term zero when `u_prev` is null (first stage). Residual order:
// e_c, e_l, v_s, e_o, q̇, Δq̇, v̇_s.
StageResiduals ContouringResiduals(const PathLinearization& path, const OcpState& x,
                                   const OcpInput* u, const OcpInput* u_prev,
                                   const Weights& weights);

// Time-indexed tracking stage cost over x = q, u = q̇:
//   w_c‖p_r(s_ref) - p_ee‖² + w_o‖e_o‖² + w_qd‖q̇‖² + w_dqd‖q̇ - q̇_prev‖².
// `path` must be linearized at s_ref; only its q columns are used.
StageResiduals TrackingResiduals(const PathLinearization& path, const Eigen::VectorXd* qd,
                                 const Eigen::VectorXd* qd_prev, const Weights& weights);

}  // namespace rmpcc

#endif  // RMPCC_STAGE_COST_HPP_
