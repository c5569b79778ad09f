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

#ifndef RMPCC_PATH_ERRORS_HPP_
#define RMPCC_PATH_ERRORS_HPP_

#include <Eigen/Core>

#include "rmpcc/kinematics.hpp"
#include "rmpcc/path_spline.hpp"
#include "rmpcc/robot_model.hpp"

namespace rmpcc {

// e = p_r(s) - p_ee, split along the unit path tangent into the lag error
// e_l = (t̂ᵀe) t̂ and the contouring error e_c = e - e_l; the orientation
// error is e_o = Log(R_r(s)ᵀ R_ee).
struct PathErrors {
  Eigen::Vector3d e = Eigen::Vector3d::Zero();
  Eigen::Vector3d e_l = Eigen::Vector3d::Zero();
  Eigen::Vector3d e_c = Eigen::Vector3d::Zero();
  Eigen::Vector3d e_o = Eigen::Vector3d::Zero();
};

// Jacobians over the state columns [q (n), s, v_s].
struct PathErrorJacobians {
  Eigen::Matrix3Xd de;
  Eigen::Matrix3Xd de_l;
  Eigen::Matrix3Xd de_c;
  Eigen::Matrix3Xd de_o;
};

struct PathLinearization {
  PathErrors errors;
  PathErrorJacobians jacobians;
};

// Throws std::domain_error when the orientation error is numerically pi.
PathErrors ComputePathErrors(const PathSpline& path, const EePose& ee, double s);

// Errors plus their Jacobians:
//   de/dx   = [-J_pos, dp/ds, 0]
//   de_l/dx = (t̂ᵀe) dt̂/dx + t̂ (eᵀ dt̂/dx) + t̂ t̂ᵀ de/dx, with dt̂/dx = [0, dt̂/ds, 0]
//   de_c/dx = de/dx - de_l/dx
//   de_o/dx = [Jr⁻¹(e_o) R_eeᵀ J_ori, -Jr⁻¹(e_o) R_eeᵀ ω_r, 0]
// where ω_r is the world-frame angular rate dR_r/ds. Throws std::domain_error
// when |e_o| >= pi - 1e-6.
PathLinearization LinearizePathErrors(const PathSpline& path, const RobotModel& model,
                                      const KinematicState& state, double s);

}  // namespace rmpcc

#endif  // RMPCC_PATH_ERRORS_HPP_
