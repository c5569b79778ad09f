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

#include "rmpcc/path_spline.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include <glog/logging.h>

namespace rmpcc {
namespace {

constexpr double kMinTangentNorm = 1e-9;
constexpr int kTangentScanSamples = 64;

// Natural cubic spline second derivatives (M_0 = M_{P-1} = 0) by the Thomas
// algorithm, one column per coordinate.
Eigen::MatrixX3d NaturalSecondDerivatives(const std::vector<double>& knots,
                                          const Eigen::MatrixX3d& values) {
  const int count = static_cast<int>(knots.size());
  Eigen::MatrixX3d m = Eigen::MatrixX3d::Zero(count, 3);
  if (count < 3) return m;

  const int interior = count - 2;
  std::vector<double> diag(interior), upper(interior), lower(interior);
  Eigen::MatrixX3d rhs(interior, 3);
  for (int i = 1; i <= interior; ++i) {
    const double h0 = knots[i] - knots[i - 1];
    const double h1 = knots[i + 1] - knots[i];
    lower[i - 1] = h0;
    diag[i - 1] = 2.0 * (h0 + h1);
    upper[i - 1] = h1;
    rhs.row(i - 1) = 6.0 * ((values.row(i + 1) - values.row(i)) / h1 -
                            (values.row(i) - values.row(i - 1)) / h0);
  }
  for (int i = 1; i < interior; ++i) {
    const double factor = lower[i] / diag[i - 1];
    diag[i] -= factor * upper[i - 1];
    rhs.row(i) -= factor * rhs.row(i - 1);
  }
  Eigen::MatrixX3d solution(interior, 3);
  solution.row(interior - 1) = rhs.row(interior - 1) / diag[interior - 1];
  for (int i = interior - 2; i >= 0; --i) {
    solution.row(i) = (rhs.row(i) - upper[i] * solution.row(i + 1)) / diag[i];
  }
  m.middleRows(1, interior) = solution;
  return m;
}

}  // namespace

PathSpline::PathSpline(std::vector<ViaPoint> via_points)
    : via_points_(std::move(via_points)) {
  const int count = static_cast<int>(via_points_.size());
  if (count < 2) {
    throw std::invalid_argument("PathSpline: at least two via-points required");
  }
  if (via_points_.front().s != 0.0 || via_points_.back().s != 1.0) {
    throw std::invalid_argument("PathSpline: knots must start at 0 and end at 1");
  }
  std::vector<double> knots(count);
  Eigen::MatrixX3d positions(count, 3);
  for (int i = 0; i < count; ++i) {
    knots[i] = via_points_[i].s;
    positions.row(i) = via_points_[i].position.transpose();
    if (i > 0 && !(knots[i] > knots[i - 1])) {
      throw std::invalid_argument("PathSpline: knots must be strictly increasing");
    }
    if (!lie::IsRotation(via_points_[i].orientation, 1e-6)) {
      throw std::invalid_argument("PathSpline: via-point " + std::to_string(i) +
                                  " orientation is not a rotation");
    }
    if (i > 0 && (via_points_[i].position - via_points_[i - 1].position).norm() <
                     kMinTangentNorm) {
      throw std::invalid_argument("PathSpline: coincident consecutive via-points " +
                                  std::to_string(i - 1) + " and " + std::to_string(i));
    }
  }

  const Eigen::MatrixX3d second = NaturalSecondDerivatives(knots, positions);
  segments_.resize(count - 1);
  for (int i = 0; i + 1 < count; ++i) {
    Segment& seg = segments_[i];
    const double h = knots[i + 1] - knots[i];
    const Eigen::Vector3d y0 = positions.row(i).transpose();
    const Eigen::Vector3d y1 = positions.row(i + 1).transpose();
    const Eigen::Vector3d m0 = second.row(i).transpose();
    const Eigen::Vector3d m1 = second.row(i + 1).transpose();
    seg.s0 = knots[i];
    seg.length = h;
    seg.coefficients[0] = y0;
    seg.coefficients[1] = (y1 - y0) / h - h * (2.0 * m0 + m1) / 6.0;
    seg.coefficients[2] = 0.5 * m0;
    seg.coefficients[3] = (m1 - m0) / (6.0 * h);

    seg.start_rotation = via_points_[i].orientation;
    const lie::RotationSO3 relative =
        via_points_[i].orientation.transpose() * via_points_[i + 1].orientation;
    if (relative.trace() <= -1.0 + 1e-9) {
      throw std::invalid_argument("PathSpline: relative rotation at pi on segment " +
                                  std::to_string(i));
    }
    seg.relative_rotation = lie::Log(relative);
    if (seg.relative_rotation.norm() >= std::numbers::pi - 1e-3) {
      throw std::invalid_argument("PathSpline: relative rotation too close to pi on segment " +
                                  std::to_string(i));
    }
  }

  // Reject stationary points of the position spline: scan |dp/ds| and refine
  // the smallest sample with a golden-section search.
  for (int i = 0; i + 1 < count; ++i) {
    const Segment& seg = segments_[i];
    auto speed = [&seg](double u) {
      return (seg.coefficients[1] + 2.0 * seg.coefficients[2] * u +
              3.0 * seg.coefficients[3] * u * u)
          .norm();
    };
    int best = 0;
    double best_speed = speed(0.0);
    for (int k = 1; k <= kTangentScanSamples; ++k) {
      const double v = speed(seg.length * k / kTangentScanSamples);
      if (v < best_speed) {
        best_speed = v;
        best = k;
      }
    }
    double a = seg.length * std::max(best - 1, 0) / kTangentScanSamples;
    double b = seg.length * std::min(best + 1, kTangentScanSamples) / kTangentScanSamples;
    constexpr double kInvPhi = 0.6180339887498949;
    for (int iter = 0; iter < 80; ++iter) {
      const double c = b - kInvPhi * (b - a);
      const double d = a + kInvPhi * (b - a);
      if (speed(c) < speed(d)) {
        b = d;
      } else {
        a = c;
      }
    }
    best_speed = std::min(best_speed, speed(0.5 * (a + b)));
    if (best_speed < kMinTangentNorm) {
      throw std::invalid_argument("PathSpline: stationary tangent on segment " +
                                  std::to_string(i));
    }
  }
}

PathSpline PathSpline::FromPoses(const std::vector<Eigen::Vector3d>& positions,
                                 const std::vector<lie::RotationSO3>& orientations) {
  if (positions.size() != orientations.size()) {
    throw std::invalid_argument("PathSpline: position/orientation count mismatch");
  }
  const int count = static_cast<int>(positions.size());
  if (count < 2) {
    throw std::invalid_argument("PathSpline: at least two via-points required");
  }
  std::vector<ViaPoint> via(count);
  for (int i = 0; i < count; ++i) {
    via[i].position = positions[i];
    via[i].orientation = orientations[i];
    via[i].s = (i == count - 1) ? 1.0 : static_cast<double>(i) / (count - 1);
  }
  return PathSpline(std::move(via));
}

double PathSpline::Clamp(double s) const {
  if (s < 0.0 || s > 1.0) {
    if (s < -1e-9 || s > 1.0 + 1e-9) {
      LOG_EVERY_N(WARNING, 1000) << "path parameter " << s << " outside [0, 1]; clamped";
    }
    return std::clamp(s, 0.0, 1.0);
  }
  return s;
}

int PathSpline::SegmentIndex(double s) const {
  s = Clamp(s);
  // First knot strictly >= s gives the left segment at interior knots.
  auto it = std::lower_bound(via_points_.begin() + 1, via_points_.end(), s,
                             [](const ViaPoint& v, double value) { return v.s < value; });
  const int index = static_cast<int>(it - via_points_.begin()) - 1;
  return std::clamp(index, 0, num_segments() - 1);
}

PositionSample PathSpline::SamplePosition(double s) const {
  s = Clamp(s);
  const Segment& seg = segments_[SegmentIndex(s)];
  const double u = s - seg.s0;
  const auto& c = seg.coefficients;
  PositionSample out;
  out.p = c[0] + u * (c[1] + u * (c[2] + u * c[3]));
  if (u == seg.length) {
    // Exact interpolation at the right knot of the active segment.
    out.p = via_points_[SegmentIndex(s) + 1].position;
  }
  out.dp_ds = c[1] + u * (2.0 * c[2] + 3.0 * u * c[3]);
  out.d2p_ds2 = 2.0 * c[2] + 6.0 * u * c[3];
  return out;
}

TangentSample PathSpline::UnitTangent(double s) const {
  const PositionSample sample = SamplePosition(s);
  const double speed = sample.dp_ds.norm();
  if (speed <= kMinTangentNorm) {
    throw std::domain_error("PathSpline: degenerate tangent");
  }
  TangentSample out;
  out.t_hat = sample.dp_ds / speed;
  out.dt_hat_ds =
      (sample.d2p_ds2 - out.t_hat * out.t_hat.dot(sample.d2p_ds2)) / speed;
  return out;
}

OrientationSample PathSpline::SampleOrientation(double s) const {
  s = Clamp(s);
  OrientationSample out;
  out.segment = SegmentIndex(s);
  const Segment& seg = segments_[out.segment];
  const double t = std::clamp((s - seg.s0) / seg.length, 0.0, 1.0);
  if (s == seg.s0 + seg.length) {
    out.rotation = via_points_[out.segment + 1].orientation;
  } else {
    out.rotation = seg.start_rotation * lie::Exp(Blend(t) * seg.relative_rotation);
  }
  out.phi_prime = (BlendDerivative(t) / seg.length) * seg.relative_rotation;
  // Exp(a * Phi) leaves Phi fixed, so rotation * phi_prime = R_i * phi_prime.
  out.world_rate = seg.start_rotation * out.phi_prime;
  return out;
}

}  // namespace rmpcc
