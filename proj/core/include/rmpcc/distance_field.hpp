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

#ifndef RMPCC_DISTANCE_FIELD_HPP_
#define RMPCC_DISTANCE_FIELD_HPP_

#include <memory>
#include <vector>

#include <Eigen/Core>

#include "rmpcc/kinematics.hpp"
#include "rmpcc/mlp.hpp"
#include "rmpcc/robot_model.hpp"

namespace rmpcc {

struct ObstacleSphere {
  Eigen::Vector3d center = Eigen::Vector3d::Zero();
  double radius = 0.0;
};

// A signed distance and its gradient with respect to q.
struct DistanceValue {
  double distance = 0.0;
  Eigen::VectorXd gradient;
};

// Closest capsule pair of a self-distance query.
struct CapsulePair {
  int first = -1;
  int second = -1;
};

// Minimum self-distance between the robot links.
class SelfDistanceField {
 public:
  virtual ~SelfDistanceField() = default;

  // `state` must be ForwardKinematics(model, q) for the same q.
  virtual DistanceValue Evaluate(const Eigen::VectorXd& q, const KinematicState& state) const = 0;
};

// Capsule-pair self distance: the minimum over non-ignored pairs of
// (axis distance - r_a - r_b). Negative values mean penetration. The gradient
// holds the witness points fixed, n̂ᵀ(J_wa - J_wb). Ties go to the lowest pair
// index. With softmin_temperature > 0 the hard minimum is replaced by
// -T log(sum exp(-d_k / T)).
class CapsuleSelfDistance final : public SelfDistanceField {
 public:
  // Throws std::invalid_argument when the model has no checkable capsule pair.
  explicit CapsuleSelfDistance(std::shared_ptr<const RobotModel> model,
                               double softmin_temperature = 0.0);

  DistanceValue Evaluate(const Eigen::VectorXd& q, const KinematicState& state) const override;

  // Pair reached by the hard minimum (ignores the softmin setting).
  CapsulePair ClosestPair(const KinematicState& state) const;

  const std::vector<CapsulePair>& pairs() const { return pairs_; }

 private:
  std::shared_ptr<const RobotModel> model_;
  double softmin_temperature_;
  std::vector<CapsulePair> pairs_;
};

// Self distance predicted by a network taking [q, cos q, sin q]; output 0 is
// the distance in metres.
class MlpSelfDistance final : public SelfDistanceField {
 public:
  // Throws std::invalid_argument if the network input does not match 3 * dof.
  MlpSelfDistance(MlpModel network, int dof);

  DistanceValue Evaluate(const Eigen::VectorXd& q, const KinematicState& state) const override;

 private:
  MlpModel network_;
};

struct LinkDistance {
  int link = 0;
  DistanceValue value;
};

// Distance from each moving link (link >= 1 carrying at least one capsule) to
// the sphere CENTER: point-to-axis distance minus the capsule radius. The
// obstacle radius is not subtracted. Links with several capsules report their
// minimum. Ordered by link index.
std::vector<LinkDistance> EnvLinkDistances(const RobotModel& model, const KinematicState& state,
                                           const Eigen::Vector3d& obstacle_center);

// Number of entries EnvLinkDistances returns for `model`.
int CountEnvLinks(const RobotModel& model);

}  // namespace rmpcc

#endif  // RMPCC_DISTANCE_FIELD_HPP_
