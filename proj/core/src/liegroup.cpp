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

#include "rmpcc/liegroup.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <Eigen/LU>
#include <Eigen/SVD>

namespace rmpcc::lie {

Eigen::Matrix3d Hat(const Eigen::Vector3d& v) {
  Eigen::Matrix3d m;
  m << 0.0, -v.z(), v.y(),
       v.z(), 0.0, -v.x(),
       -v.y(), v.x(), 0.0;
  return m;
}

Eigen::Vector3d Vee(const Eigen::Matrix3d& m) {
  if (((m + m.transpose()).array().abs() > 1e-10).any()) {
    throw std::invalid_argument("Vee: matrix is not skew-symmetric");
  }
  return {m(2, 1), m(0, 2), m(1, 0)};
}

RotationSO3 Exp(const RotVec& phi) {
  const double theta = phi.norm();
  const Eigen::Matrix3d k = Hat(phi);
  if (theta < kExpLogSmallAngle) {
    return Eigen::Matrix3d::Identity() + k + 0.5 * k * k;
  }
  const double theta2 = theta * theta;
  return Eigen::Matrix3d::Identity() + (std::sin(theta) / theta) * k +
         ((1.0 - std::cos(theta)) / theta2) * k * k;
}

RotVec Log(const RotationSO3& rotation) {
  const double trace = rotation.trace();
  if (trace <= -1.0 + 1e-9) {
    throw std::domain_error("Log: rotation angle at pi");
  }
  // w = sin(theta) * axis
  const Eigen::Vector3d w(0.5 * (rotation(2, 1) - rotation(1, 2)),
                          0.5 * (rotation(0, 2) - rotation(2, 0)),
                          0.5 * (rotation(1, 0) - rotation(0, 1)));
  const double sin_theta = w.norm();
  const double cos_theta = 0.5 * (trace - 1.0);
  if (sin_theta < kExpLogSmallAngle && cos_theta > 0.0) {
    // theta / sin(theta) = 1 + theta^2 / 6 + O(theta^4)
    return (1.0 + sin_theta * sin_theta / 6.0) * w;
  }
  const double theta = std::atan2(sin_theta, cos_theta);
  return (theta / sin_theta) * w;
}

Eigen::Matrix3d RightJacobianInverse(const RotVec& phi) {
  const double theta = phi.norm();
  if (theta >= std::numbers::pi - 1e-6) {
    throw std::domain_error("RightJacobianInverse: angle too close to pi");
  }
  const Eigen::Matrix3d k = Hat(phi);
  double coefficient;
  if (theta < kJacobianSmallAngle) {
    coefficient = 1.0 / 12.0 + theta * theta / 720.0;
  } else {
    coefficient = 1.0 / (theta * theta) -
                  (1.0 + std::cos(theta)) / (2.0 * theta * std::sin(theta));
  }
  return Eigen::Matrix3d::Identity() + 0.5 * k + coefficient * k * k;
}

bool IsRotation(const Eigen::Matrix3d& m, double tolerance) {
  const Eigen::Matrix3d defect = m.transpose() * m - Eigen::Matrix3d::Identity();
  return (defect.array().abs() <= tolerance).all() &&
         std::abs(m.determinant() - 1.0) <= tolerance;
}

RotationSO3 Orthonormalize(const Eigen::Matrix3d& m) {
  Eigen::JacobiSVD<Eigen::Matrix3d> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Eigen::Matrix3d r = svd.matrixU() * svd.matrixV().transpose();
  if (r.determinant() < 0.0) {
    Eigen::Matrix3d u = svd.matrixU();
    u.col(2) *= -1.0;
    r = u * svd.matrixV().transpose();
  }
  return r;
}

}  // namespace rmpcc::lie
