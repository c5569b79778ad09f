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

#ifndef RMPCC_HORIZON_HPP_
#define RMPCC_HORIZON_HPP_

#include <memory>
#include <vector>

#include <Eigen/Core>

#include "rmpcc/distance_field.hpp"
#include "rmpcc/kinematics.hpp"
#include "rmpcc/ocp.hpp"
#include "rmpcc/qp_solver.hpp"
#include "rmpcc/stage_constraints.hpp"
#include "rmpcc/stage_cost.hpp"

namespace rmpcc {

// Formulation-specific part of a receding-horizon OCP with linear
// time-invariant dynamics x_{k+1} = A x_k + B u_k. The first dof() entries of
// x are the joint positions.
class HorizonFormulation {
 public:
  virtual ~HorizonFormulation() = default;

  virtual int state_dim() const = 0;
  virtual int input_dim() const = 0;
  virtual const Eigen::MatrixXd& A() const = 0;
  virtual const Eigen::MatrixXd& B() const = 0;
  virtual const Eigen::VectorXd& state_lower() const = 0;
  virtual const Eigen::VectorXd& state_upper() const = 0;
  virtual const Eigen::VectorXd& input_lower() const = 0;
  virtual const Eigen::VectorXd& input_upper() const = 0;

  // Residuals of stage k at time t (start of the horizon). `u` is null at the
  // terminal stage, `u_prev` at k = 0.
  virtual StageResiduals Residuals(int k, double t, const Eigen::VectorXd& x,
                                   const KinematicState& state, const Eigen::VectorXd* u,
                                   const Eigen::VectorXd* u_prev) const = 0;
};

// QP in the stacked input increment δU around a linearization point U.
struct HorizonQp {
  QpProblem qp;
  // Rolled-out states at the linearization point, N entries.
  std::vector<Eigen::VectorXd> states;
  // CBF rows that entered the QP (redundant rows are dropped).
  std::vector<ConstraintRow> barrier_rows;
  int barrier_rows_total = 0;
  // Sum of stage costs at the linearization point.
  double cost = 0.0;
};

struct SqpOutcome {
  Eigen::VectorXd inputs;               // stacked, (N - 1) * nu
  std::vector<Eigen::VectorXd> states;  // N
  SolveStatus status = SolveStatus::kOptimal;
  SolveStats stats;
};

// Condensed SQP over a HorizonFormulation: Gauss-Newton cost, CBF rows and
// box bounds on states and inputs, states eliminated through the dynamics.
// Stage linearization runs on `threads` workers with per-stage output slots,
// so results do not depend on the thread count.
class HorizonSolver {
 public:
  HorizonSolver(std::shared_ptr<const HorizonFormulation> formulation,
                std::shared_ptr<const StageConstraintBuilder> constraints, const OcpConfig& config);

  int horizon() const { return horizon_; }
  int num_inputs() const { return (horizon_ - 1) * formulation_->input_dim(); }

  std::vector<Eigen::VectorXd> Rollout(const Eigen::VectorXd& x0,
                                       const Eigen::VectorXd& inputs) const;

  // Sensitivity dx_k / dU, state_dim x num_inputs.
  const Eigen::MatrixXd& Sensitivity(int k) const { return sensitivities_[k]; }

  HorizonQp BuildQp(const Eigen::VectorXd& x0, double t, const ObstacleSphere* obstacle,
                    const Eigen::VectorXd& inputs, SolveStats* stats = nullptr) const;

  // Runs sqp_iterations full Gauss-Newton steps from `initial_inputs`.
  SqpOutcome Solve(const Eigen::VectorXd& x0, double t, const ObstacleSphere* obstacle,
                   const Eigen::VectorXd& initial_inputs);

 private:
  std::shared_ptr<const HorizonFormulation> formulation_;
  std::shared_ptr<const StageConstraintBuilder> constraints_;
  int horizon_;
  int sqp_iterations_;
  int threads_;
  double dt_;
  std::vector<Eigen::MatrixXd> sensitivities_;
  QpSolver qp_solver_;
};

}  // namespace rmpcc

#endif  // RMPCC_HORIZON_HPP_
