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

#ifndef RMPCC_ROBOT_MODEL_HPP_
#define RMPCC_ROBOT_MODEL_HPP_

#include <istream>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace rmpcc {

// A revolute joint: the child frame is parent * origin * Rot(axis, q).
struct Joint {
  std::string name;
  Eigen::Isometry3d origin = Eigen::Isometry3d::Identity();
  Eigen::Vector3d axis = Eigen::Vector3d::UnitZ();
  double q_min = 0.0;
  double q_max = 0.0;
  double qd_min = 0.0;
  double qd_max = 0.0;
};

// Line segment swept by a sphere, fixed in the frame of `link`. Link 0 is the
// base; link l (l >= 1) moves with joints 1..l.
struct Capsule {
  int link = 0;
  Eigen::Vector3d p0 = Eigen::Vector3d::Zero();
  Eigen::Vector3d p1 = Eigen::Vector3d::Zero();
  double radius = 0.0;
};

// Serial-chain kinematic description. Immutable once validated.
struct RobotModel {
  std::string name;
  Eigen::Isometry3d base = Eigen::Isometry3d::Identity();
  std::vector<Joint> joints;
  // End-effector frame relative to the last link frame.
  Eigen::Isometry3d tool = Eigen::Isometry3d::Identity();
  std::vector<Capsule> capsules;
  // Link pairs excluded from self-distance in addition to adjacent links.
  std::vector<std::pair<int, int>> ignored_link_pairs;
  // Rows of the 6 x n geometric Jacobian (linear then angular) entering the
  // manipulability index. Defaults to all six.
  std::vector<int> manipulability_rows = {0, 1, 2, 3, 4, 5};

  int dof() const { return static_cast<int>(joints.size()); }
  int ee_link() const { return dof(); }

  Eigen::VectorXd q_min() const;
  Eigen::VectorXd q_max() const;
  Eigen::VectorXd qd_min() const;
  Eigen::VectorXd qd_max() const;

  // Whether the self-distance check skips the pair (adjacent or ignored).
  bool IsIgnoredPair(int link_a, int link_b) const;

  // Throws std::invalid_argument when an invariant is violated.
  void Validate() const;
};

// Parses the line-oriented robot description format (see docs/file_formats.md).
// Throws std::invalid_argument with the offending line number on errors.
RobotModel ParseRobotModel(std::istream& in);

// Throws std::runtime_error when the file cannot be opened.
RobotModel LoadRobotModel(const std::string& path);

// Fixed-axis roll/pitch/yaw (R = Rz(yaw) Ry(pitch) Rx(roll)).
Eigen::Matrix3d RotationFromRpy(double roll, double pitch, double yaw);

}  // namespace rmpcc

#endif  // RMPCC_ROBOT_MODEL_HPP_
