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

// Reference solutions for small QPs, shared by the unit tests and the
// acceptance binary.
#ifndef RMPCC_TESTS_QP_ORACLE_HPP_
#define RMPCC_TESTS_QP_ORACLE_HPP_

#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include <Eigen/Core>
#include <Eigen/LU>

#include "rmpcc/qp_solver.hpp"

namespace rmpcc::testing {

// Random strictly convex QP whose constraints hold strictly at `interior`.
inline QpProblem RandomQp(std::mt19937_64& rng, Eigen::VectorXd* interior) {
  std::uniform_int_distribution<int> vars(1, 6);
  std::uniform_int_distribution<int> cons(1, 8);
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> width(0.05, 1.0);
  std::uniform_int_distribution<int> kind(0, 3);
  const int n = vars(rng);
  const int m = cons(rng);
  auto random_matrix = [&](int r, int c) {
    Eigen::MatrixXd out(r, c);
    for (int i = 0; i < r; ++i) {
      for (int j = 0; j < c; ++j) out(i, j) = normal(rng);
    }
    return out;
  };
  QpProblem qp;
  const Eigen::MatrixXd root = random_matrix(n, n);
  qp.H = root.transpose() * root + 0.1 * Eigen::MatrixXd::Identity(n, n);
  qp.g = 3.0 * random_matrix(n, 1);
  qp.A = random_matrix(m, n);
  *interior = random_matrix(n, 1);
  const Eigen::VectorXd ax = qp.A * *interior;
  qp.lower.resize(m);
  qp.upper.resize(m);
  for (int i = 0; i < m; ++i) {
    const int k = kind(rng);
    qp.lower[i] = k == 1 ? -std::numeric_limits<double>::infinity() : ax[i] - width(rng);
    qp.upper[i] = k == 2 ? std::numeric_limits<double>::infinity() : ax[i] + width(rng);
    if (k == 3) qp.upper[i] = qp.lower[i] = ax[i];  // equality row
  }
  return qp;
}

inline bool Feasible(const QpProblem& qp, const Eigen::VectorXd& x, double tol) {
  const Eigen::VectorXd ax = qp.A * x;
  for (int i = 0; i < qp.num_constraints(); ++i) {
    if (ax[i] < qp.lower[i] - tol || ax[i] > qp.upper[i] + tol) return false;
  }
  return true;
}

// Solves the equality-constrained KKT system for every assignment of each row
// to {free, at lower, at upper} and keeps the best feasible stationary point.
inline Eigen::VectorXd EnumerateActiveSets(const QpProblem& qp) {
  const int n = qp.num_variables();
  const int m = qp.num_constraints();
  int combos = 1;
  for (int i = 0; i < m; ++i) combos *= 3;
  Eigen::VectorXd best;
  double best_value = std::numeric_limits<double>::infinity();
  for (int code = 0; code < combos; ++code) {
    std::vector<int> rows;
    std::vector<double> targets;
    int c = code;
    bool valid = true;
    for (int i = 0; i < m; ++i, c /= 3) {
      const int side = c % 3;
      if (side == 0) continue;
      const double bound = side == 1 ? qp.lower[i] : qp.upper[i];
      if (!std::isfinite(bound)) valid = false;
      if (side == 2 && qp.lower[i] == qp.upper[i]) valid = false;  // same as side 1
      rows.push_back(i);
      targets.push_back(bound);
    }
    if (!valid) continue;
    const int k = static_cast<int>(rows.size());
    Eigen::MatrixXd kkt = Eigen::MatrixXd::Zero(n + k, n + k);
    Eigen::VectorXd rhs(n + k);
    kkt.topLeftCorner(n, n) = qp.H;
    rhs.head(n) = -qp.g;
    for (int j = 0; j < k; ++j) {
      kkt.block(n + j, 0, 1, n) = qp.A.row(rows[j]);
      kkt.block(0, n + j, n, 1) = qp.A.row(rows[j]).transpose();
      rhs[n + j] = targets[j];
    }
    const Eigen::FullPivLU<Eigen::MatrixXd> lu(kkt);
    if (!lu.isInvertible()) continue;
    const Eigen::VectorXd x = lu.solve(rhs).head(n);
    if (!Feasible(qp, x, 1e-9)) continue;
    const double value = qp.Objective(x);
    if (value < best_value) {
      best_value = value;
      best = x;
    }
  }
  return best;
}

}  // namespace rmpcc::testing

#endif  // RMPCC_TESTS_QP_ORACLE_HPP_
