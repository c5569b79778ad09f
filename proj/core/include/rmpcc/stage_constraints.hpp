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

#ifndef RMPCC_STAGE_CONSTRAINTS_HPP_
#define RMPCC_STAGE_CONSTRAINTS_HPP_

#include <memory>
#include <vector>

#include <Eigen/Core>

#include "rmpcc/barriers.hpp"
#include "rmpcc/distance_field.hpp"
#include "rmpcc/kinematics.hpp"
#include "rmpcc/ocp.hpp"
#include "rmpcc/robot_model.hpp"

namespace rmpcc {

// Barrier values at one configuration, each with its q-gradient.
struct SafetyMeasures {
  DistanceValue manipulability;
  DistanceValue self_distance;
  std::vector<LinkDistance> env_distances;  // empty without an obstacle

  // min over links of d_env,l (sphere center distance, radius not removed);
  // +inf without an obstacle.
  double MinEnvDistance() const;
};

struct StageConstraints {
  std::vector<ConstraintRow> rows;
  SafetyMeasures measures;
  double self_distance_ms = 0.0;
  double env_distance_ms = 0.0;
};

// Builds the linearized CBF rows of one stage:
//   h_sing = mu - eps_sing, h_self = d_self - eps_self,
//   h_env,l = d_env,l - r_obs - eps_env (one row per link when an obstacle is
//   present).
// Reentrant; one instance can serve all stages concurrently.
class StageConstraintBuilder {
 public:
  StageConstraintBuilder(std::shared_ptr<const RobotModel> model,
                         std::shared_ptr<const SelfDistanceField> self_distance,
                         BarrierSettings settings, GradientMode manipulability_gradient);

  SafetyMeasures Measure(const Eigen::VectorXd& q, const KinematicState& state,
                         const ObstacleSphere* obstacle) const;

  StageConstraints Build(int stage, const Eigen::VectorXd& q, const KinematicState& state,
                         const ObstacleSphere* obstacle, int input_dim) const;

  const RobotModel& model() const { return *model_; }
  const BarrierSettings& settings() const { return settings_; }

 private:
  std::shared_ptr<const RobotModel> model_;
  std::shared_ptr<const SelfDistanceField> self_distance_;
  BarrierSettings settings_;
  GradientMode manipulability_gradient_;
};

// Replaces the rate term ∇h(q_k)ᵀq̇ of every row by its secant along the
// iterate input q̇̄:
//   (h(q_k+1) - h(q_k)) / dt + ∇h(q_k+1)ᵀ (q̇ - q̇̄),  q_k+1 = q_k + dt q̇̄,
// where `next` holds the measures at q_k+1. The row is unchanged when q̇̄ = 0;
// otherwise the one-step change of h is exact at q̇ = q̇̄ instead of missing
// the ½ dt² q̇ᵀ∇²h q̇ term.
void ApplySecantRate(const SafetyMeasures& next, const Eigen::VectorXd& qd_bar, double dt,
                     StageConstraints* stage);

// True when the row holds for every u with |u_i| <= max_abs_u[i] and every
// state offset with |dq_i| <= max_abs_dq[i], so it can be dropped.
bool IsRedundantRow(const ConstraintRow& row, const Eigen::VectorXd& max_abs_u,
                    const Eigen::VectorXd& max_abs_dq);

std::unique_ptr<SelfDistanceField> MakeSelfDistanceField(
    const std::shared_ptr<const RobotModel>& model, const DistanceSettings& settings);

}  // namespace rmpcc

#endif  // RMPCC_STAGE_CONSTRAINTS_HPP_
