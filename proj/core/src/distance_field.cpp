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

#include "rmpcc/distance_field.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

#include "rmpcc/segment_distance.hpp"

namespace rmpcc {
namespace {

// Witness points closer than this have no defined separation direction; the
// gradient is reported as zero there.
constexpr double kMinSeparation = 1e-12;

struct WorldCapsule {
  Eigen::Vector3d p0;
  Eigen::Vector3d p1;
};

WorldCapsule ToWorld(const Capsule& capsule, const KinematicState& state) {
  const Eigen::Isometry3d& frame = state.link_frames[capsule.link];
  return {frame * capsule.p0, frame * capsule.p1};
}

struct PairDistance {
  double distance;
  SegmentDistanceResult segment;
};

PairDistance EvaluatePair(const RobotModel& model, const KinematicState& state,
                          const CapsulePair& pair) {
  const Capsule& a = model.capsules[pair.first];
  const Capsule& b = model.capsules[pair.second];
  const WorldCapsule wa = ToWorld(a, state);
  const WorldCapsule wb = ToWorld(b, state);
  PairDistance out;
  out.segment = SegmentSegmentDistance(wa.p0, wa.p1, wb.p0, wb.p1);
  out.distance = out.segment.distance - a.radius - b.radius;
  return out;
}

Eigen::VectorXd PairGradient(const RobotModel& model, const KinematicState& state,
                             const CapsulePair& pair, const SegmentDistanceResult& segment) {
  Eigen::VectorXd gradient = Eigen::VectorXd::Zero(model.dof());
  const Eigen::Vector3d diff = segment.witness_a - segment.witness_b;
  const double norm = diff.norm();
  if (norm < kMinSeparation) return gradient;
  const Eigen::Vector3d normal = diff / norm;
  const Eigen::Matrix3Xd ja =
      PointJacobian(model, state, model.capsules[pair.first].link, segment.witness_a);
  const Eigen::Matrix3Xd jb =
      PointJacobian(model, state, model.capsules[pair.second].link, segment.witness_b);
  gradient = (ja - jb).transpose() * normal;
  return gradient;
}

}  // namespace

CapsuleSelfDistance::CapsuleSelfDistance(std::shared_ptr<const RobotModel> model,
                                         double softmin_temperature)
    : model_(std::move(model)), softmin_temperature_(softmin_temperature) {
  if (!model_) throw std::invalid_argument("CapsuleSelfDistance: null model");
  if (softmin_temperature_ < 0.0) {
    throw std::invalid_argument("CapsuleSelfDistance: negative softmin temperature");
  }
  const int count = static_cast<int>(model_->capsules.size());
  for (int i = 0; i < count; ++i) {
    for (int j = i + 1; j < count; ++j) {
      if (model_->IsIgnoredPair(model_->capsules[i].link, model_->capsules[j].link)) continue;
      pairs_.push_back({i, j});
    }
  }
  if (pairs_.empty()) {
    throw std::invalid_argument("CapsuleSelfDistance: model has no non-adjacent capsule pairs");
  }
}

CapsulePair CapsuleSelfDistance::ClosestPair(const KinematicState& state) const {
  CapsulePair best = pairs_.front();
  double best_distance = std::numeric_limits<double>::infinity();
  for (const CapsulePair& pair : pairs_) {
    const double d = EvaluatePair(*model_, state, pair).distance;
    if (d < best_distance) {
      best_distance = d;
      best = pair;
    }
  }
  return best;
}

DistanceValue CapsuleSelfDistance::Evaluate(const Eigen::VectorXd& /*q*/,
                                            const KinematicState& state) const {
  std::vector<PairDistance> distances;
  distances.reserve(pairs_.size());
  size_t best = 0;
  for (size_t k = 0; k < pairs_.size(); ++k) {
    distances.push_back(EvaluatePair(*model_, state, pairs_[k]));
    if (distances[k].distance < distances[best].distance) best = k;
  }
  DistanceValue out;
  if (softmin_temperature_ <= 0.0) {
    out.distance = distances[best].distance;
    out.gradient = PairGradient(*model_, state, pairs_[best], distances[best].segment);
    return out;
  }
  // Log-sum-exp shifted by the hard minimum for numerical range.
  const double t = softmin_temperature_;
  const double d_min = distances[best].distance;
  double sum = 0.0;
  std::vector<double> weights(distances.size());
  for (size_t k = 0; k < distances.size(); ++k) {
    weights[k] = std::exp(-(distances[k].distance - d_min) / t);
    sum += weights[k];
  }
  out.distance = d_min - t * std::log(sum);
  out.gradient = Eigen::VectorXd::Zero(model_->dof());
  for (size_t k = 0; k < distances.size(); ++k) {
    const double w = weights[k] / sum;
    if (w < 1e-16) continue;
    out.gradient += w * PairGradient(*model_, state, pairs_[k], distances[k].segment);
  }
  return out;
}

MlpSelfDistance::MlpSelfDistance(MlpModel network, int dof) : network_(std::move(network)) {
  if (network_.dof() != dof) {
    throw std::invalid_argument("MlpSelfDistance: network input is " +
                                std::to_string(network_.input_dim()) + ", expected 3 * " +
                                std::to_string(dof));
  }
}

DistanceValue MlpSelfDistance::Evaluate(const Eigen::VectorXd& q,
                                        const KinematicState& /*state*/) const {
  Eigen::VectorXd value;
  Eigen::MatrixXd jacobian;
  network_.ForwardWithJacobian(q, &value, &jacobian);
  return {value[0], jacobian.row(0).transpose()};
}

std::vector<LinkDistance> EnvLinkDistances(const RobotModel& model, const KinematicState& state,
                                           const Eigen::Vector3d& obstacle_center) {
  std::vector<LinkDistance> out;
  for (int link = 1; link <= model.dof(); ++link) {
    double best = std::numeric_limits<double>::infinity();
    Eigen::Vector3d best_witness = Eigen::Vector3d::Zero();
    for (const Capsule& capsule : model.capsules) {
      if (capsule.link != link) continue;
      const WorldCapsule w = ToWorld(capsule, state);
      const PointSegmentResult r = PointSegmentDistance(obstacle_center, w.p0, w.p1);
      const double d = r.distance - capsule.radius;
      if (d < best) {
        best = d;
        best_witness = r.witness;
      }
    }
    if (!std::isfinite(best)) continue;
    LinkDistance entry;
    entry.link = link;
    entry.value.distance = best;
    entry.value.gradient = Eigen::VectorXd::Zero(model.dof());
    const Eigen::Vector3d diff = obstacle_center - best_witness;
    const double norm = diff.norm();
    if (norm >= kMinSeparation) {
      entry.value.gradient =
          -PointJacobian(model, state, link, best_witness).transpose() * (diff / norm);
    }
    out.push_back(std::move(entry));
  }
  return out;
}

int CountEnvLinks(const RobotModel& model) {
  int count = 0;
  for (int link = 1; link <= model.dof(); ++link) {
    for (const Capsule& capsule : model.capsules) {
      if (capsule.link == link) {
        ++count;
        break;
      }
    }
  }
  return count;
}

}  // namespace rmpcc
