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

#ifndef RMPCC_LIEGROUP_HPP_
#define RMPCC_LIEGROUP_HPP_

#include <Eigen/Core>

namespace rmpcc::lie {

// A rotation matrix. Invariant: RᵀR = I and det(R) = 1 to ~1e-10.
using RotationSO3 = Eigen::Matrix3d;
// Tangent-space coordinates of SO(3); canonical representative has norm <= pi.
using RotVec = Eigen::Vector3d;

// Below these angles the closed forms switch to their Taylor series.
inline constexpr double kExpLogSmallAngle = 1e-8;
inline constexpr double kJacobianSmallAngle = 1e-4;

Eigen::Matrix3d Hat(const Eigen::Vector3d& v);

// Throws std::invalid_argument if `m` is not skew-symmetric within 1e-10.
Eigen::Vector3d Vee(const Eigen::Matrix3d& m);

RotationSO3 Exp(const RotVec& phi);

// Throws std::domain_error when the rotation angle is numerically pi
// (trace(R) <= -1 + 1e-9).
RotVec Log(const RotationSO3& rotation);

// Inverse right Jacobian of SO(3), so that
//   Log(Exp(phi) * Exp(delta)) ~= phi + RightJacobianInverse(phi) * delta.
// Throws std::domain_error for |phi| >= pi - 1e-6.
Eigen::Matrix3d RightJacobianInverse(const RotVec& phi);

bool IsRotation(const Eigen::Matrix3d& m, double tolerance = 1e-10);

// Projects a near-rotation back onto SO(3) (polar decomposition via SVD).
RotationSO3 Orthonormalize(const Eigen::Matrix3d& m);

}  // namespace rmpcc::lie

#endif  // RMPCC_LIEGROUP_HPP_
