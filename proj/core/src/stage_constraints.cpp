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

#include "rmpcc/stage_constraints.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <stdexcept>
#include <utility>

#include "rmpcc/mlp.hpp"

namespace rmpcc {
namespace {

using Clock = std::chrono::steady_clock;

double MillisecondsSince(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

// At an exact singularity the gradient is undefined; a zero gradient makes the
// barrier row infeasible there, which the caller treats like any infeasible QP.
Eigen::VectorXd SafeManipulabilityGradient(const RobotModel& model, const Eigen::VectorXd& q,
                                           GradientMode mode) {
  try {
    return ManipulabilityGradient(model, q, mode);
  } catch (const std::domain_error&) {
    return Eigen::VectorXd::Zero(model.dof());
  }
}

}  // namespace

double SafetyMeasures::MinEnvDistance() const {
  double d = std::numeric_limits<double>::infinity();
  for (const LinkDistance& link : env_distances) d = std::min(d, link.value.distance);
  return d;
}

StageConstraintBuilder::StageConstraintBuilder(std::shared_ptr<const RobotModel> model,
                                               std::shared_ptr<const SelfDistanceField> self_distance,
                                               BarrierSettings settings,
                                               GradientMode manipulability_gradient)
    : model_(std::move(model)),
      self_distance_(std::move(self_distance)),
      settings_(settings),
      manipulability_gradient_(manipulability_gradient) {
  if (!model_) throw std::invalid_argument("StageConstraintBuilder: null model");
  if (settings_.self_collision && !self_distance_) {
    throw std::invalid_argument("StageConstraintBuilder: self-collision barrier needs a field");
  }
}

SafetyMeasures StageConstraintBuilder::Measure(const Eigen::VectorXd& q,
                                               const KinematicState& state,
                                               const ObstacleSphere* obstacle) const {
  SafetyMeasures m;
  m.manipulability.distance = Manipulability(*model_, GeometricJacobian(*model_, state));
  m.manipulability.gradient = SafeManipulabilityGradient(*model_, q, manipulability_gradient_);
  if (self_distance_) m.self_distance = self_distance_->Evaluate(q, state);
  if (obstacle) m.env_distances = EnvLinkDistances(*model_, state, obstacle->center);
  return m;
}

StageConstraints StageConstraintBuilder::Build(int stage, const Eigen::VectorXd& q,
                                               const KinematicState& state,
                                               const ObstacleSphere* obstacle,
                                               int input_dim) const {
  StageConstraints out;
  SafetyMeasures& m = out.measures;
  m.manipulability.distance = Manipulability(*model_, GeometricJacobian(*model_, state));
  if (settings_.singularity) {
    m.manipulability.gradient = SafeManipulabilityGradient(*model_, q, manipulability_gradient_);
    ConstraintRow row = CbfRow(m.manipulability.distance - settings_.eps_sing,
                               m.manipulability.gradient, settings_.delta_sing, stage, input_dim);
    row.kind = BarrierKind::kSingularity;
    out.rows.push_back(std::move(row));
  }
  if (self_distance_) {
    const auto start = Clock::now();
    m.self_distance = self_distance_->Evaluate(q, state);
    out.self_distance_ms = MillisecondsSince(start);
    if (settings_.self_collision) {
      ConstraintRow row = CbfRow(m.self_distance.distance - settings_.eps_self,
                                 m.self_distance.gradient, settings_.delta_self, stage, input_dim);
      row.kind = BarrierKind::kSelfCollision;
      out.rows.push_back(std::move(row));
    }
  }
  if (obstacle) {
    const auto start = Clock::now();
    m.env_distances = EnvLinkDistances(*model_, state, obstacle->center);
    out.env_distance_ms = MillisecondsSince(start);
    if (settings_.env_collision) {
      for (const LinkDistance& link : m.env_distances) {
        ConstraintRow row =
            CbfRow(link.value.distance - obstacle->radius - settings_.eps_env, link.value.gradient,
                   settings_.delta_env, stage, input_dim);
        row.kind = BarrierKind::kEnvCollision;
        row.link = link.link;
        out.rows.push_back(std::move(row));
      }
    }
  }
  return out;
}

void ApplySecantRate(const SafetyMeasures& next, const Eigen::VectorXd& qd_bar, double dt,
                     StageConstraints* stage) {
  if (!(dt > 0.0)) throw std::invalid_argument("ApplySecantRate: dt must be positive");
  const SafetyMeasures& cur = stage->measures;
  for (ConstraintRow& row : stage->rows) {
    const DistanceValue* now = nullptr;
    const DistanceValue* later = nullptr;
    switch (row.kind) {
      case BarrierKind::kSingularity:
        now = &cur.manipulability;
        later = &next.manipulability;
        break;
      case BarrierKind::kSelfCollision:
        now = &cur.self_distance;
        later = &next.self_distance;
        break;
      case BarrierKind::kEnvCollision:
        for (const LinkDistance& l : cur.env_distances) {
          if (l.link == row.link) now = &l.value;
        }
        for (const LinkDistance& l : next.env_distances) {
          if (l.link == row.link) later = &l.value;
        }
        break;
    }
    if (!now || !later || later->gradient.size() != qd_bar.size()) {
      throw std::invalid_argument("ApplySecantRate: measures do not match the rows");
    }
    const int n = static_cast<int>(qd_bar.size());
    row.coeff_u.head(n) = -later->gradient;
    row.rhs += (later->distance - now->distance) / dt - later->gradient.dot(qd_bar);
  }
}

bool IsRedundantRow(const ConstraintRow& row, const Eigen::VectorXd& max_abs_u,
                    const Eigen::VectorXd& max_abs_dq) {
  const double worst =
      row.coeff_u.cwiseAbs().dot(max_abs_u) + row.coeff_q.cwiseAbs().dot(max_abs_dq);
  return worst <= row.rhs;
}

std::unique_ptr<SelfDistanceField> MakeSelfDistanceField(
    const std::shared_ptr<const RobotModel>& model, const DistanceSettings& settings) {
  switch (settings.self_backend) {
    case SelfDistanceBackend::kCapsule:
      return std::make_unique<CapsuleSelfDistance>(model, settings.softmin_temperature);
    case SelfDistanceBackend::kMlp:
      return std::make_unique<MlpSelfDistance>(LoadMlp(settings.mlp_weights), model->dof());
  }
  throw std::invalid_argument("unknown self-distance backend");
}

}  // namespace rmpcc
