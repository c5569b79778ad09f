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

#ifndef RMPCC_QP_SOLVER_HPP_
#define RMPCC_QP_SOLVER_HPP_

#include <string>

#include <Eigen/Core>

namespace rmpcc {

// minimize ½ xᵀHx + gᵀx  subject to  lower <= A x <= upper.
// Infinite bounds are allowed; lower == upper encodes an equality.
struct QpProblem {
  Eigen::MatrixXd H;
  Eigen::VectorXd g;
  Eigen::MatrixXd A;
  Eigen::VectorXd lower;
  Eigen::VectorXd upper;

  int num_variables() const { return static_cast<int>(g.size()); }
  int num_constraints() const { return static_cast<int>(A.rows()); }
  double Objective(const Eigen::VectorXd& x) const { return 0.5 * x.dot(H * x) + g.dot(x); }
};

enum class QpStatus { kOptimal, kMaxIterations, kPrimalInfeasible };

const char* QpStatusName(QpStatus status);

// KKT residuals in the original (unscaled) problem, infinity norms.
struct KktResiduals {
  double primal = 0.0;           // bound violation of A x
  double dual = 0.0;             // H x + g + Aᵀ y
  double complementarity = 0.0;  // multipliers times slack of their bound
};

// Multiplier convention: dual_i > 0 on an active upper bound, < 0 on an active
// lower bound.
KktResiduals ComputeKktResiduals(const QpProblem& problem, const Eigen::VectorXd& x,
                                 const Eigen::VectorXd& y);

struct QpSolution {
  Eigen::VectorXd primal;
  Eigen::VectorXd dual;
  // A x projected onto the bounds; used to warm start.
  Eigen::VectorXd slack;
  QpStatus status = QpStatus::kMaxIterations;
  int iterations = 0;
  bool polished = false;
  KktResiduals residuals;
  // For kPrimalInfeasible: y with Aᵀy ~ 0 and a positive support value.
  Eigen::VectorXd certificate;
};

struct QpSettings {
  int max_iterations = 4000;
  double tolerance = 1e-6;
  double rho = 0.1;
  double sigma = 1e-6;
  double alpha = 1.6;
  bool scaling = true;
  int scaling_iterations = 10;
  int adaptive_rho_interval = 25;
  int check_interval = 5;
  // ADMM residual (relative to problem scale) below which polishing is tried.
  double polish_threshold = 1e-3;
  // Looser residual below which polishing is retried each time the guessed
  // active set changes.
  double polish_stall_threshold = 0.1;
  double infeasibility_tolerance = 1e-5;
  // Regularization of the polishing KKT system.
  double polish_delta = 1e-9;
  int polish_refinement_steps = 3;
  int polish_active_set_corrections = 20;
};

// Convex QP solver: ADMM operator splitting with Ruiz equilibration, adaptive
// step size and infeasibility detection, finished by active-set polishing.
// A status of kOptimal guarantees every KKT residual <= settings.tolerance.
// The instance owns its workspace; use one per thread.
class QpSolver {
 public:
  explicit QpSolver(QpSettings settings = {}) : settings_(settings) {}

  // Throws std::invalid_argument on inconsistent dimensions, an asymmetric H
  // or lower > upper.
  QpSolution Solve(const QpProblem& problem, const QpSolution* warm_start = nullptr);

  const QpSettings& settings() const { return settings_; }

 private:
  QpSettings settings_;
};

}  // namespace rmpcc

#endif  // RMPCC_QP_SOLVER_HPP_
