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

#include "rmpcc/rmpcc_solver.hpp"

#include <algorithm>
#include <chrono>
#include <utility>

#include "rmpcc/path_errors.hpp"
#include "rmpcc/stage_cost.hpp"

namespace rmpcc {

ContouringFormulation::ContouringFormulation(std::shared_ptr<const RobotModel> model,
                                             std::shared_ptr<const PathSpline> path,
                                             const OcpConfig& config)
    : model_(std::move(model)),
      path_(std::move(path)),
      weights_(config.weights),
      n_(model_->dof()) {
  const double dt = config.dt;
  a_ = Eigen::MatrixXd::Identity(n_ + 2, n_ + 2);
  a_(n_, n_ + 1) = dt;
  b_ = Eigen::MatrixXd::Zero(n_ + 2, n_ + 1);
  b_.topLeftCorner(n_, n_).diagonal().setConstant(dt);
  b_(n_, n_) = 0.5 * dt * dt;
  b_(n_ + 1, n_) = dt;

  const OcpBounds& bounds = config.bounds;
  x_lower_.resize(n_ + 2);
  x_upper_.resize(n_ + 2);
  x_lower_ << model_->q_min(), bounds.s_min, bounds.vs_min;
  x_upper_ << model_->q_max(), bounds.s_max, bounds.vs_max;
  u_lower_.resize(n_ + 1);
  u_upper_.resize(n_ + 1);
  u_lower_ << model_->qd_min(), bounds.vds_min;
  u_upper_ << model_->qd_max(), bounds.vds_max;
}

StageResiduals ContouringFormulation::Residuals(int /*k*/, double /*t*/, const Eigen::VectorXd& x,
                                                const KinematicState& state,
                                                const Eigen::VectorXd* u,
                                                const Eigen::VectorXd* u_prev) const {
  OcpState xs = UnstackState(x, n_);
  // Predicted states may leave [0, 1] by the QP tolerance.
  const double s = std::clamp(xs.s, 0.0, 1.0);
  const PathLinearization path = LinearizePathErrors(*path_, *model_, state, s);
  OcpInput input;
  OcpInput previous;
  if (u) input = UnstackInput(*u, n_);
  if (u_prev) previous = UnstackInput(*u_prev, n_);
  return ContouringResiduals(path, xs, u ? &input : nullptr, u_prev ? &previous : nullptr,
                             weights_);
}

RmpccController::RmpccController(std::shared_ptr<const RobotModel> model,
                                 std::shared_ptr<const PathSpline> path, const OcpConfig& config)
    : model_(model), config_(config) {
  config_.Validate();
  formulation_ = std::make_shared<ContouringFormulation>(model_, std::move(path), config_);
  // A field is only needed for the barrier; robots without non-adjacent
  // capsule pairs can run with the self-collision barrier off.
  std::shared_ptr<const SelfDistanceField> self_distance;
  if (config_.barriers.self_collision) self_distance = MakeSelfDistanceField(model_, config_.distance);
  auto constraints = std::make_shared<StageConstraintBuilder>(
      model_, std::move(self_distance), config_.barriers, config_.distance.manipulability_gradient);
  engine_ = std::make_unique<HorizonSolver>(formulation_, std::move(constraints), config_);
}

OcpState RmpccController::Project(const OcpState& x) const {
  OcpState p = x;
  p.q = x.q.cwiseMax(model_->q_min()).cwiseMin(model_->q_max());
  p.s = std::clamp(x.s, config_.bounds.s_min, config_.bounds.s_max);
  p.v_s = std::clamp(x.v_s, config_.bounds.vs_min, config_.bounds.vs_max);
  return p;
}

SolveResult RmpccController::Solve(const OcpState& x0, double t, const ObstacleSphere* obstacle,
                                   const SolveResult* warm) {
  const auto start = std::chrono::steady_clock::now();
  const int n = model_->dof();
  const Eigen::VectorXd initial = ShiftedInputs(warm, config_.horizon, n + 1, true);
  const SqpOutcome outcome = engine_->Solve(StackState(Project(x0)), t, obstacle, initial);

  SolveResult result;
  result.status = outcome.status;
  result.stats = outcome.stats;
  for (int k = 0; k + 1 < config_.horizon; ++k) {
    result.u_sequence.push_back(UnstackInput(outcome.inputs.segment(k * (n + 1), n + 1), n));
  }
  for (const Eigen::VectorXd& x : outcome.states) result.x_prediction.push_back(UnstackState(x, n));
  result.stats.total_ms = std::chrono::duration<double, std::milli>(
                              std::chrono::steady_clock::now() - start)
                              .count();
  return result;
}

}  // namespace rmpcc
