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

#ifndef RMPCC_SCENARIO_HPP_
#define RMPCC_SCENARIO_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "rmpcc/distance_field.hpp"
#include "rmpcc/path_spline.hpp"

namespace rmpcc {

struct ObstacleKeyframe {
  double t = 0.0;
  Eigen::Vector3d center = Eigen::Vector3d::Zero();
};

// Sphere moving piecewise-linearly between keyframes; held at the first and
// last keyframe outside their time range.
struct ObstacleTrack {
  double radius = 0.0;
  std::vector<ObstacleKeyframe> keyframes;

  Eigen::Vector3d CenterAt(double t) const;
  ObstacleSphere At(double t) const { return {CenterAt(t), radius}; }
  // Throws std::invalid_argument on r <= 0, no keyframes or decreasing times.
  void Validate() const;
};

enum class ControllerKind { kRmpcc, kTtMpc };

const char* ControllerName(ControllerKind kind);
// Throws std::invalid_argument for names other than "rmpcc" and "tt_mpc".
ControllerKind ParseControllerKind(const std::string& name);

struct Scenario {
  std::string name = "scenario";
  std::string robot_path;
  // Empty selects the built-in defaults.
  std::string ocp_path;
  ControllerKind controller = ControllerKind::kRmpcc;
  double duration = 1.0;
  double dt = 0.01;
  std::uint64_t seed = 0;
  std::vector<ViaPoint> via_points;
  std::optional<ObstacleTrack> obstacle;
  // Initial joints. When empty, inverse kinematics onto the first via-point
  // is run from ik_seed.
  Eigen::VectorXd q0;
  Eigen::VectorXd ik_seed;
  double vs0 = 0.0;
  // Standard deviation of Gaussian noise added to the plant joints each tick.
  double joint_noise = 0.0;

  int num_ticks() const;

  // Builds the path, so it also rejects degenerate via-points. Throws
  // std::invalid_argument.
  void Validate() const;
};

struct LemniscateOptions {
  Eigen::Vector3d center = Eigen::Vector3d(0.45, 0.0, 0.45);
  // Amplitude of the sinusoidal offset along the plane normal (world x).
  double depth = 0.05;
  // Tool tilt per metre of offset from the center, rad/m.
  double tilt = 0.5;
  // Tool orientation at the center; the default points the tool straight down.
  lie::RotationSO3 facing = (Eigen::Matrix3d() << 1, 0, 0, 0, -1, 0, 0, 0, -1).finished();
};

// Via-points on a Gerono lemniscate in the vertical y-z plane through
// `center`: y = scale sin θ, z = scale sin θ cos θ, x = depth sin θ, with
// θ_i = 2π i / (n_points - 1), so the path starts and ends at the center. The
// tool leans away from the center: R_i = Exp(tilt · x̂ × (p_i - c)) R_facing.
// Throws std::invalid_argument for n_points < 8 or scale <= 0.
std::vector<ViaPoint> LemniscateViaPoints(double scale, int n_points,
                                          const LemniscateOptions& options = {});

// A scenario around LemniscateViaPoints with default timing and no obstacle.
Scenario LemniscateScenario(double scale, int n_points, const LemniscateOptions& options = {});

// Straight segment with constant orientation, `n_points` >= 2 via-points.
std::vector<ViaPoint> LineViaPoints(const Eigen::Vector3d& start, const Eigen::Vector3d& end,
                                    int n_points, const lie::RotationSO3& orientation);

// Via-point file: one `px py pz qw qx qy qz` line per point, `#` comments.
std::vector<ViaPoint> LoadViaPoints(const std::string& path);

// Scenario file (see docs/file_formats.md). Paths inside are resolved
// relative to the file. Throws std::invalid_argument on content errors and
// std::runtime_error when the file cannot be read.
Scenario LoadScenario(const std::string& path);

}  // namespace rmpcc

#endif  // RMPCC_SCENARIO_HPP_
