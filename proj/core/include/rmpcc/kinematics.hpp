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

#ifndef RMPCC_KINEMATICS_HPP_
#define RMPCC_KINEMATICS_HPP_

#include <vector>

#include <Eigen/Core>
#include <Eigen/Geometry>

#include "rmpcc/liegroup.hpp"
#include "rmpcc/robot_model.hpp"

namespace rmpcc {

struct EePose {
  Eigen::Vector3d position = Eigen::Vector3d::Zero();
  lie::RotationSO3 orientation = lie::RotationSO3::Identity();
};

// Forward kinematics of one configuration. Frames are in the world frame.
struct KinematicState {
  // link_frames[0] is the base; link_frames[l] follows joint l (1-based).
  std::vector<Eigen::Isometry3d> link_frames;
  // World axis and a point on the axis for each joint (0-based).
  std::vector<Eigen::Vector3d> joint_axes;
  std::vector<Eigen::Vector3d> joint_positions;
  EePose ee;
};

using Jacobian6 = Eigen::Matrix<double, 6, Eigen::Dynamic>;

enum class GradientMode { kFiniteDifference, kAnalytic };

KinematicState ForwardKinematics(const RobotModel& model, const Eigen::VectorXd& q);

// World-frame geometric Jacobian of the end effector, rows [v; omega].
Jacobian6 GeometricJacobian(const RobotModel& model, const KinematicState& state);
Jacobian6 GeometricJacobian(const RobotModel& model, const Eigen::VectorXd& q);

// Linear velocity Jacobian of a world point rigidly attached to `link`.
Eigen::Matrix3Xd PointJacobian(const RobotModel& model, const KinematicState& state, int link,
                               const Eigen::Vector3d& world_point);

// mu = sqrt(det(J Jᵀ)) over the model's manipulability rows; exactly 0 when
// det(J Jᵀ) is at round-off level (1e-13 relative to (trace / rows)^rows).
double Manipulability(const RobotModel& model, const Eigen::VectorXd& q);
double Manipulability(const RobotModel& model, const Jacobian6& jacobian);

// Gradient of mu. The analytic mode uses
//   d mu / d q_i = mu * trace((J Jᵀ)^-1 (dJ/dq_i) Jᵀ).
// Throws std::domain_error when mu <= 1e-12.
Eigen::VectorXd ManipulabilityGradient(const RobotModel& model, const Eigen::VectorXd& q,
                                       GradientMode mode = GradientMode::kFiniteDifference,
                                       double step = 1e-6);

// Partial derivatives dJ/dq_i of the geometric Jacobian, one 6 x n block per
// joint.
std::vector<Jacobian6> JacobianDerivatives(const RobotModel& model, const KinematicState& state);

struct IkOptions {
  int max_iterations = 500;
  double damping = 1e-2;
  double tolerance = 1e-10;
  double orientation_weight = 1.0;
};

// Damped least-squares inverse kinematics towards `target`, clamped to the
// joint limits. Returns the best configuration found.
Eigen::VectorXd SolveInverseKinematics(const RobotModel& model, const EePose& target,
                                       const Eigen::VectorXd& seed, const IkOptions& options = {});

}  // namespace rmpcc

#endif  // RMPCC_KINEMATICS_HPP_
