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

#include "rmpcc/tt_mpc.hpp"

#include <algorithm>
#include <chrono>
#include <utility>

#include "rmpcc/path_errors.hpp"
#include "rmpcc/stage_cost.hpp"

namespace rmpcc {

double TimeReference(double t, double v_desired) { return std::clamp(v_desired * t, 0.0, 1.0); }

TrackingFormulation::TrackingFormulation(std::shared_ptr<const RobotModel> model,
                                         std::shared_ptr<const PathSpline> path,
                                         const OcpConfig& config)
    : model_(std::move(model)),
      path_(std::move(path)),
      weights_(config.weights),
      dt_(config.dt),
      n_(model_->dof()) {
  a_ = Eigen::MatrixXd::Identity(n_, n_);
  b_ = dt_ * Eigen::MatrixXd::Identity(n_, n_);
  x_lower_ = model_->q_min();
  x_upper_ = model_->q_max();
  u_lower_ = model_->qd_min();
  u_upper_ = model_->qd_max();
}

StageResiduals TrackingFormulation::Residuals(int k, double t, const Eigen::VectorXd& /*x*/,
                                              const KinematicState& state,
                                              const Eigen::VectorXd* u,
                                              const Eigen::VectorXd* u_prev) const {
  const double s_ref = TimeReference(t + k * dt_, weights_.v_desired);
  const PathLinearization path = LinearizePathErrors(*path_, *model_, state, s_ref);
  return TrackingResiduals(path, u, u_prev, weights_);
}

TtMpcController::TtMpcController(std::shared_ptr<const RobotModel> model,
                                 std::shared_ptr<const PathSpline> path, const OcpConfig& config)
    : model_(model), config_(config) {
  config_.Validate();
  auto formulation = std::make_shared<TrackingFormulation>(model_, std::move(path), config_);
  // A field is only needed for the barrier; robots without non-adjacent
  // capsule pairs can run with the self-collision barrier off.
  std::shared_ptr<const SelfDistanceField> self_distance;
  if (config_.barriers.self_collision) self_distance = MakeSelfDistanceField(model_, config_.distance);
  auto constraints = std::make_shared<StageConstraintBuilder>(
      model_, std::move(self_distance), config_.barriers, config_.distance.manipulability_gradient);
  engine_ = std::make_unique<HorizonSolver>(std::move(formulation), std::move(constraints), config_);
}

SolveResult TtMpcController::Solve(const OcpState& x0, double t, const ObstacleSphere* obstacle,
                                   const SolveResult* warm) {
  const auto start = std::chrono::steady_clock::now();
  const int n = model_->dof();
  const Eigen::VectorXd q0 = x0.q.cwiseMax(model_->q_min()).cwiseMin(model_->q_max());
  const Eigen::VectorXd initial = ShiftedInputs(warm, config_.horizon, n, false);
  const SqpOutcome outcome = engine_->Solve(q0, t, obstacle, initial);

  SolveResult result;
  result.status = outcome.status;
  result.stats = outcome.stats;
  const double v_d = config_.weights.v_desired;
  for (int k = 0; k + 1 < config_.horizon; ++k) {
    result.u_sequence.push_back({outcome.inputs.segment(k * n, n), 0.0});
  }
  for (int k = 0; k < config_.horizon; ++k) {
    const double tk = t + k * config_.dt;
    const double s = TimeReference(tk, v_d);
    const double v_s = (v_d * tk > 0.0 && v_d * tk < 1.0) ? v_d : 0.0;
    result.x_prediction.push_back({outcome.states[k], s, v_s});
  }
  result.stats.total_ms = std::chrono::duration<double, std::milli>(
                              std::chrono::steady_clock::now() - start)
                              .count();
  return result;
}

}  // namespace rmpcc
