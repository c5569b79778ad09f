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

#ifndef RMPCC_PATH_SPLINE_HPP_
#define RMPCC_PATH_SPLINE_HPP_

#include <array>
#include <vector>

#include <Eigen/Core>

#include "rmpcc/liegroup.hpp"

namespace rmpcc {

struct ViaPoint {
  Eigen::Vector3d position = Eigen::Vector3d::Zero();
  lie::RotationSO3 orientation = lie::RotationSO3::Identity();
  double s = 0.0;
};

struct PositionSample {
  Eigen::Vector3d p;
  Eigen::Vector3d dp_ds;
  Eigen::Vector3d d2p_ds2;
};

struct TangentSample {
  Eigen::Vector3d t_hat;
  Eigen::Vector3d dt_hat_ds;
};

struct OrientationSample {
  lie::RotationSO3 rotation;
  // d(phi_i)/ds, expressed in the segment's start frame (a right perturbation
  // of `rotation`).
  Eigen::Vector3d phi_prime;
  // The same rate expressed in the world frame: rotation * phi_prime.
  Eigen::Vector3d world_rate;
  int segment = 0;
};

// SE(3) reference path over s in [0, 1]. Positions follow a natural cubic
// spline through the via-points; orientations follow
//   R(s) = R_i * Exp(alpha_i(s) * Log(R_iᵀ R_{i+1}))
// with alpha_i the cubic blend 3t² - 2t³ on the segment.
//
// Immutable after construction; all sampling is reentrant.
class PathSpline {
 public:
  // Via-point `s` fields must start at 0, end at 1 and strictly increase.
  // Throws std::invalid_argument on fewer than two points, bad knots,
  // consecutive relative rotations within 1e-3 of pi, or a stationary tangent.
  explicit PathSpline(std::vector<ViaPoint> via_points);

  // Assigns equally spaced knots s_i = i / (P - 1) and builds the spline.
  static PathSpline FromPoses(const std::vector<Eigen::Vector3d>& positions,
                              const std::vector<lie::RotationSO3>& orientations);

  // Sampling clamps s to [0, 1]; values outside by more than 1e-9 log a
  // warning. At interior knots the left segment is used.
  PositionSample SamplePosition(double s) const;
  TangentSample UnitTangent(double s) const;
  OrientationSample SampleOrientation(double s) const;

  int SegmentIndex(double s) const;
  int num_segments() const { return static_cast<int>(segments_.size()); }
  const std::vector<ViaPoint>& via_points() const { return via_points_; }

  // Cubic blend on the normalized segment coordinate t in [0, 1].
  static double Blend(double t) { return t * t * (3.0 - 2.0 * t); }
  static double BlendDerivative(double t) { return 6.0 * t * (1.0 - t); }

 private:
  struct Segment {
    double s0 = 0.0;
    double length = 1.0;
    // p(s) = c[0] + c[1] u + c[2] u² + c[3] u³ with u = s - s0.
    std::array<Eigen::Vector3d, 4> coefficients;
    lie::RotationSO3 start_rotation;
    Eigen::Vector3d relative_rotation;  // Log(R_iᵀ R_{i+1})
  };

  double Clamp(double s) const;

  std::vector<ViaPoint> via_points_;
  std::vector<Segment> segments_;
};

}  // namespace rmpcc

#endif  // RMPCC_PATH_SPLINE_HPP_
