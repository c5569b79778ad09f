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

#include "rmpcc/kinematics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <Eigen/Cholesky>
#include <Eigen/LU>

namespace rmpcc {
namespace {

constexpr double kRankDeficiencyTolerance = 1e-13;

}  // namespace

KinematicState ForwardKinematics(const RobotModel& model, const Eigen::VectorXd& q) {
  const int n = model.dof();
  KinematicState state;
  state.link_frames.resize(n + 1);
  state.joint_axes.resize(n);
  state.joint_positions.resize(n);
  Eigen::Isometry3d frame = model.base;
  state.link_frames[0] = frame;
  for (int i = 0; i < n; ++i) {
    const Joint& joint = model.joints[i];
    frame = frame * joint.origin;
    state.joint_axes[i] = frame.linear() * joint.axis;
    state.joint_positions[i] = frame.translation();
    frame.rotate(Eigen::AngleAxisd(q[i], joint.axis));
    state.link_frames[i + 1] = frame;
  }
  const Eigen::Isometry3d ee = frame * model.tool;
  state.ee.position = ee.translation();
  state.ee.orientation = ee.linear();
  return state;
}

Jacobian6 GeometricJacobian(const RobotModel& model, const KinematicState& state) {
  const int n = model.dof();
  Jacobian6 jacobian(6, n);
  for (int j = 0; j < n; ++j) {
    const Eigen::Vector3d& z = state.joint_axes[j];
    jacobian.block<3, 1>(0, j) = z.cross(state.ee.position - state.joint_positions[j]);
    jacobian.block<3, 1>(3, j) = z;
  }
  return jacobian;
}

Jacobian6 GeometricJacobian(const RobotModel& model, const Eigen::VectorXd& q) {
  return GeometricJacobian(model, ForwardKinematics(model, q));
}

Eigen::Matrix3Xd PointJacobian(const RobotModel& model, const KinematicState& state, int link,
                               const Eigen::Vector3d& world_point) {
  Eigen::Matrix3Xd jacobian = Eigen::Matrix3Xd::Zero(3, model.dof());
  for (int j = 0; j < link; ++j) {
    jacobian.col(j) = state.joint_axes[j].cross(world_point - state.joint_positions[j]);
  }
  return jacobian;
}

namespace {

Eigen::MatrixXd SelectRows(const RobotModel& model, const Jacobian6& jacobian) {
  Eigen::MatrixXd selected(model.manipulability_rows.size(), jacobian.cols());
  for (size_t r = 0; r < model.manipulability_rows.size(); ++r) {
    selected.row(r) = jacobian.row(model.manipulability_rows[r]);
  }
  return selected;
}

}  // namespace

double Manipulability(const RobotModel& model, const Jacobian6& jacobian) {
  const Eigen::MatrixXd j = SelectRows(model, jacobian);
  const Eigen::MatrixXd gram = j * j.transpose();
  const double det = gram.determinant();
  // A determinant at round-off level relative to the Gram scale means rank
  // deficiency; report it as exactly zero instead of sqrt(noise).
  const double scale = std::pow(gram.trace() / gram.rows(), gram.rows());
  return det > kRankDeficiencyTolerance * scale ? std::sqrt(det) : 0.0;
}

double Manipulability(const RobotModel& model, const Eigen::VectorXd& q) {
  return Manipulability(model, GeometricJacobian(model, q));
}

std::vector<Jacobian6> JacobianDerivatives(const RobotModel& model, const KinematicState& state) {
  const int n = model.dof();
  std::vector<Jacobian6> derivatives(n, Jacobian6::Zero(6, n));
  const Eigen::Vector3d& p = state.ee.position;
  for (int i = 0; i < n; ++i) {
    const Eigen::Vector3d& zi = state.joint_axes[i];
    for (int j = 0; j < n; ++j) {
      const Eigen::Vector3d& zj = state.joint_axes[j];
      if (i < j) {
        derivatives[i].block<3, 1>(0, j) = zi.cross(zj.cross(p - state.joint_positions[j]));
        derivatives[i].block<3, 1>(3, j) = zi.cross(zj);
      } else {
        derivatives[i].block<3, 1>(0, j) = zj.cross(zi.cross(p - state.joint_positions[i]));
      }
    }
  }
  return derivatives;
}

Eigen::VectorXd ManipulabilityGradient(const RobotModel& model, const Eigen::VectorXd& q,
                                       GradientMode mode, double step) {
  const int n = model.dof();
  const KinematicState state = ForwardKinematics(model, q);
  const Jacobian6 jacobian = GeometricJacobian(model, state);
  const double mu = Manipulability(model, jacobian);
  if (mu <= 1e-12) {
    throw std::domain_error("ManipulabilityGradient: configuration is singular");
  }
  Eigen::VectorXd gradient(n);
  if (mode == GradientMode::kFiniteDifference) {
    Eigen::VectorXd qp = q;
    for (int i = 0; i < n; ++i) {
      qp[i] = q[i] + step;
      const double up = Manipulability(model, qp);
      qp[i] = q[i] - step;
      const double down = Manipulability(model, qp);
      qp[i] = q[i];
      gradient[i] = (up - down) / (2.0 * step);
    }
    return gradient;
  }
  const Eigen::MatrixXd j = SelectRows(model, jacobian);
  const Eigen::MatrixXd gram_inverse = (j * j.transpose()).inverse();
  const std::vector<Jacobian6> derivatives = JacobianDerivatives(model, state);
  for (int i = 0; i < n; ++i) {
    const Eigen::MatrixXd dj = SelectRows(model, derivatives[i]);
    gradient[i] = mu * (gram_inverse * dj * j.transpose()).trace();
  }
  return gradient;
}

Eigen::VectorXd SolveInverseKinematics(const RobotModel& model, const EePose& target,
                                       const Eigen::VectorXd& seed, const IkOptions& options) {
  const Eigen::VectorXd lower = model.q_min();
  const Eigen::VectorXd upper = model.q_max();
  Eigen::VectorXd q = seed.cwiseMax(lower).cwiseMin(upper);
  Eigen::VectorXd best = q;
  double best_error = std::numeric_limits<double>::infinity();
  const double lambda2 = options.damping * options.damping;
  for (int iter = 0; iter < options.max_iterations; ++iter) {
    const KinematicState state = ForwardKinematics(model, q);
    Eigen::Matrix<double, 6, 1> error;
    error.head<3>() = target.position - state.ee.position;
    error.tail<3>() = options.orientation_weight *
                      lie::Log(target.orientation * state.ee.orientation.transpose());
    const double norm = error.norm();
    if (norm < best_error) {
      best_error = norm;
      best = q;
    }
    if (norm < options.tolerance) break;
    Jacobian6 jacobian = GeometricJacobian(model, state);
    jacobian.bottomRows<3>() *= options.orientation_weight;
    const Eigen::Matrix<double, 6, 6> gram =
        jacobian * jacobian.transpose() + lambda2 * Eigen::Matrix<double, 6, 6>::Identity();
    const Eigen::VectorXd step = jacobian.transpose() * gram.ldlt().solve(error);
    q = (q + step).cwiseMax(lower).cwiseMin(upper);
  }
  return best;
}

}  // namespace rmpcc
