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

#include "rmpcc/segment_distance.hpp"

#include <algorithm>
#include <utility>

namespace rmpcc {
namespace {

constexpr double kDegenerateLength2 = 1e-24;

}  // namespace

PointSegmentResult PointSegmentDistance(const Eigen::Vector3d& point, const Eigen::Vector3d& s0,
                                        const Eigen::Vector3d& s1) {
  const Eigen::Vector3d d = s1 - s0;
  const double length2 = d.squaredNorm();
  PointSegmentResult out;
  out.t = length2 > kDegenerateLength2 ? std::clamp((point - s0).dot(d) / length2, 0.0, 1.0)
                                       : 0.0;
  out.witness = s0 + out.t * d;
  out.distance = (point - out.witness).norm();
  return out;
}

namespace {

constexpr double kParallelTolerance = 1e-14;

SegmentDistanceResult MakeResult(const Eigen::Vector3d& a0, const Eigen::Vector3d& a1,
                                 const Eigen::Vector3d& b0, const Eigen::Vector3d& b1, double s,
                                 double t) {
  SegmentDistanceResult out;
  out.t_a = s;
  out.t_b = t;
  out.witness_a = a0 + s * (a1 - a0);
  out.witness_b = b0 + t * (b1 - b0);
  out.distance = (out.witness_a - out.witness_b).norm();
  return out;
}

// For (nearly) parallel segments the squared distance is almost flat across
// the overlap, so its minimum over the parameter square lies on one of the
// four edges, each an endpoint-to-segment problem.
SegmentDistanceResult NearlyParallelDistance(const Eigen::Vector3d& a0, const Eigen::Vector3d& a1,
                                             const Eigen::Vector3d& b0,
                                             const Eigen::Vector3d& b1) {
  const PointSegmentResult from_a0 = PointSegmentDistance(a0, b0, b1);
  const PointSegmentResult from_a1 = PointSegmentDistance(a1, b0, b1);
  const PointSegmentResult from_b0 = PointSegmentDistance(b0, a0, a1);
  const PointSegmentResult from_b1 = PointSegmentDistance(b1, a0, a1);
  SegmentDistanceResult best = MakeResult(a0, a1, b0, b1, 0.0, from_a0.t);
  for (const SegmentDistanceResult& candidate :
       {MakeResult(a0, a1, b0, b1, 1.0, from_a1.t), MakeResult(a0, a1, b0, b1, from_b0.t, 0.0),
        MakeResult(a0, a1, b0, b1, from_b1.t, 1.0)}) {
    if (candidate.distance < best.distance) best = candidate;
  }
  return best;
}

// Closest points of two segments following the clamped-parameter scheme of
// Ericson, "Real-Time Collision Detection", section 5.1.9.
SegmentDistanceResult OrderedSegmentDistance(const Eigen::Vector3d& a0, const Eigen::Vector3d& a1,
                                             const Eigen::Vector3d& b0, const Eigen::Vector3d& b1) {
  const Eigen::Vector3d d1 = a1 - a0;
  const Eigen::Vector3d d2 = b1 - b0;
  const Eigen::Vector3d r = a0 - b0;
  const double a = d1.squaredNorm();
  const double e = d2.squaredNorm();
  const double f = d2.dot(r);

  double s = 0.0;
  double t = 0.0;
  if (a <= kDegenerateLength2 && e <= kDegenerateLength2) {
    // both points
  } else if (a <= kDegenerateLength2) {
    t = std::clamp(f / e, 0.0, 1.0);
  } else {
    const double c = d1.dot(r);
    if (e <= kDegenerateLength2) {
      s = std::clamp(-c / a, 0.0, 1.0);
    } else {
      const double b = d1.dot(d2);
      const double denom = a * e - b * b;
      if (denom <= kParallelTolerance * a * e) return NearlyParallelDistance(a0, a1, b0, b1);
      s = std::clamp((b * f - c * e) / denom, 0.0, 1.0);
      t = (b * s + f) / e;
      if (t < 0.0) {
        t = 0.0;
        s = std::clamp(-c / a, 0.0, 1.0);
      } else if (t > 1.0) {
        t = 1.0;
        s = std::clamp((b - c) / a, 0.0, 1.0);
      }
    }
  }
  return MakeResult(a0, a1, b0, b1, s, t);
}

bool LexicographicLess(const Eigen::Vector3d& x0, const Eigen::Vector3d& x1,
                       const Eigen::Vector3d& y0, const Eigen::Vector3d& y1) {
  for (int i = 0; i < 3; ++i) {
    if (x0[i] != y0[i]) return x0[i] < y0[i];
  }
  for (int i = 0; i < 3; ++i) {
    if (x1[i] != y1[i]) return x1[i] < y1[i];
  }
  return false;
}

}  // namespace

// The floating-point evaluation is done in a canonical argument order so that
// swapping the segments gives a bit-identical distance.
SegmentDistanceResult SegmentSegmentDistance(const Eigen::Vector3d& a0, const Eigen::Vector3d& a1,
                                             const Eigen::Vector3d& b0, const Eigen::Vector3d& b1) {
  if (!LexicographicLess(b0, b1, a0, a1)) return OrderedSegmentDistance(a0, a1, b0, b1);
  SegmentDistanceResult swapped = OrderedSegmentDistance(b0, b1, a0, a1);
  std::swap(swapped.witness_a, swapped.witness_b);
  std::swap(swapped.t_a, swapped.t_b);
  return swapped;
}

}  // namespace rmpcc
