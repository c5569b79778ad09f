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

#ifndef RMPCC_SEGMENT_DISTANCE_HPP_
#define RMPCC_SEGMENT_DISTANCE_HPP_

#include <Eigen/Core>

namespace rmpcc {

struct SegmentDistanceResult {
  double distance = 0.0;
  Eigen::Vector3d witness_a = Eigen::Vector3d::Zero();
  Eigen::Vector3d witness_b = Eigen::Vector3d::Zero();
  // Segment parameters of the witness points, in [0, 1].
  double t_a = 0.0;
  double t_b = 0.0;
};

// Exact minimum distance between segments [a0, a1] and [b0, b1]. Zero-length
// segments are handled as points.
SegmentDistanceResult SegmentSegmentDistance(const Eigen::Vector3d& a0, const Eigen::Vector3d& a1,
                                             const Eigen::Vector3d& b0, const Eigen::Vector3d& b1);

struct PointSegmentResult {
  double distance = 0.0;
  Eigen::Vector3d witness = Eigen::Vector3d::Zero();
  double t = 0.0;
};

PointSegmentResult PointSegmentDistance(const Eigen::Vector3d& point, const Eigen::Vector3d& s0,
                                        const Eigen::Vector3d& s1);

}  // namespace rmpcc

#endif  // RMPCC_SEGMENT_DISTANCE_HPP_
