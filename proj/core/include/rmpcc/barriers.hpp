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

#ifndef RMPCC_BARRIERS_HPP_
#define RMPCC_BARRIERS_HPP_

#include <Eigen/Core>

namespace rmpcc {

inline constexpr double kDefaultRbfDelta = 0.01;

struct RbfValue {
  double value = 0.0;
  double derivative = 0.0;
  double second_derivative = 0.0;
};

// Relaxed barrier: -log(h + 1) for h >= delta; below delta the second-order
// Taylor expansion of -log(h + 1) about delta, so the junction is C².
// Throws std::invalid_argument unless delta > 0.
RbfValue Rbf(double h, double delta = kDefaultRbfDelta);

enum class BarrierKind { kSingularity, kSelfCollision, kEnvCollision };

const char* BarrierKindName(BarrierKind kind);

struct BarrierSpec {
  BarrierKind kind = BarrierKind::kSingularity;
  double epsilon = 0.0;
  double delta = kDefaultRbfDelta;
};

// One linearized CBF condition RBF(h(q)) - ∇hᵀ q̇ <= 0 around q̄:
//   coeff_uᵀ u + coeff_qᵀ (q - q̄) <= rhs
// with coeff_u = [-∇h; 0...], coeff_q = RBF'(h̄) ∇h and rhs = -RBF(h̄). The
// curvature of h itself is dropped.
struct ConstraintRow {
  Eigen::VectorXd coeff_u;
  Eigen::VectorXd coeff_q;
  double rhs = 0.0;
  int stage = 0;
  BarrierKind kind = BarrierKind::kSingularity;
  // Link index for environment rows, -1 otherwise.
  int link = -1;

  // Left-hand side minus rhs; <= 0 when satisfied.
  double Violation(const Eigen::VectorXd& u, const Eigen::VectorXd& dq) const;
};

// `input_dim` >= grad_q.size(); trailing input entries (e.g. v̇_s) get zero
// coefficients.
ConstraintRow CbfRow(double h, const Eigen::VectorXd& grad_q, double delta, int stage,
                     int input_dim);

}  // namespace rmpcc

#endif  // RMPCC_BARRIERS_HPP_
