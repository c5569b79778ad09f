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

#include "rmpcc/barriers.hpp"

#include <cmath>
#include <stdexcept>

namespace rmpcc {

RbfValue Rbf(double h, double delta) {
  if (!(delta > 0.0)) throw std::invalid_argument("Rbf: delta must be positive");
  RbfValue out;
  if (h >= delta) {
    out.value = -std::log1p(h);
    out.derivative = -1.0 / (h + 1.0);
    out.second_derivative = 1.0 / ((h + 1.0) * (h + 1.0));
    return out;
  }
  const double f0 = -std::log1p(delta);
  const double f1 = -1.0 / (delta + 1.0);
  const double f2 = 1.0 / ((delta + 1.0) * (delta + 1.0));
  const double dh = h - delta;
  out.value = f0 + f1 * dh + 0.5 * f2 * dh * dh;
  out.derivative = f1 + f2 * dh;
  out.second_derivative = f2;
  return out;
}

const char* BarrierKindName(BarrierKind kind) {
  switch (kind) {
    case BarrierKind::kSingularity:
      return "singularity";
    case BarrierKind::kSelfCollision:
      return "self_collision";
    case BarrierKind::kEnvCollision:
      return "env_collision";
  }
  return "unknown";
}

double ConstraintRow::Violation(const Eigen::VectorXd& u, const Eigen::VectorXd& dq) const {
  return coeff_u.dot(u) + coeff_q.dot(dq) - rhs;
}

ConstraintRow CbfRow(double h, const Eigen::VectorXd& grad_q, double delta, int stage,
                     int input_dim) {
  const int n = static_cast<int>(grad_q.size());
  if (input_dim < n) throw std::invalid_argument("CbfRow: input_dim smaller than gradient");
  const RbfValue rbf = Rbf(h, delta);
  ConstraintRow row;
  row.coeff_u = Eigen::VectorXd::Zero(input_dim);
  row.coeff_u.head(n) = -grad_q;
  row.coeff_q = rbf.derivative * grad_q;
  row.rhs = -rbf.value;
  row.stage = stage;
  return row;
}

}  // namespace rmpcc
