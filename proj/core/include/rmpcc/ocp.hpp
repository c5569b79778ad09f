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

#ifndef RMPCC_OCP_HPP_
#define RMPCC_OCP_HPP_

#include <string>
#include <vector>

#include <Eigen/Core>

#include "rmpcc/barriers.hpp"
#include "rmpcc/kinematics.hpp"
#include "rmpcc/qp_solver.hpp"

namespace rmpcc {

// x = [q; s; v_s].
struct OcpState {
  Eigen::VectorXd q;
  double s = 0.0;
  double v_s = 0.0;
};

// u = [q̇; v̇_s].
struct OcpInput {
  Eigen::VectorXd qd;
  double vd_s = 0.0;
};

// Exact zero-order-hold step of the kinematic joints and the double
// integrator on s:
//   q' = q + q̇ dt,  s' = s + v_s dt + ½ v̇_s dt²,  v_s' = v_s + v̇_s dt.
// Throws std::invalid_argument unless dt > 0.
OcpState DiscreteDynamics(const OcpState& x, const OcpInput& u, double dt);

Eigen::VectorXd StackState(const OcpState& x);
OcpState UnstackState(const Eigen::VectorXd& v, int dof);
Eigen::VectorXd StackInput(const OcpInput& u);
OcpInput UnstackInput(const Eigen::VectorXd& v, int dof);

struct Weights {
  double w_c = 500.0;
  double w_l = 100.0;
  double w_vs = 2.0;
  double w_o = 100.0;
  double w_qd = 0.002;
  double w_dqd = 10.0;
  double w_vds = 0.1;
  double v_desired = 0.05;
};

struct BarrierSettings {
  bool singularity = true;
  bool self_collision = true;
  bool env_collision = true;
  double eps_sing = 0.018;
  double eps_self = 0.01;
  double eps_env = 0.01;
  double delta_sing = kDefaultRbfDelta;
  double delta_self = kDefaultRbfDelta;
  double delta_env = kDefaultRbfDelta;
  // Evaluate the rate term of each row as a secant along the current SQP
  // iterate instead of the tangent at q_k. See ApplySecantRate.
  bool secant_rate = true;
};

// Bounds on the path states and v̇_s. Joint position and velocity bounds come
// from the robot model.
struct OcpBounds {
  double s_min = 0.0;
  double s_max = 1.0;
  double vs_min = -0.2;
  double vs_max = 0.2;
  double vds_min = -2.0;
  double vds_max = 2.0;
};

enum class SelfDistanceBackend { kCapsule, kMlp };

struct DistanceSettings {
  SelfDistanceBackend self_backend = SelfDistanceBackend::kCapsule;
  std::string mlp_weights;
  // 0 selects the hard minimum.
  double softmin_temperature = 0.0;
  GradientMode manipulability_gradient = GradientMode::kFiniteDifference;
};

struct OcpConfig {
  // Number of predicted states; N - 1 inputs are optimized.
  int horizon = 10;
  double dt = 0.01;
  int sqp_iterations = 2;
  // Worker threads for stage linearization; 0 reads RMPCC_THREADS (default 1).
  int threads = 0;
  Weights weights;
  BarrierSettings barriers;
  OcpBounds bounds;
  DistanceSettings distance;
  QpSettings qp;

  // Throws std::invalid_argument when a value is out of range.
  void Validate() const;
};

// Thread count after resolving OcpConfig::threads == 0 via RMPCC_THREADS.
int ResolveThreadCount(int configured);

enum class SolveStatus { kOptimal, kMaxIterations, kInfeasibleQp };

const char* SolveStatusName(SolveStatus status);

// Wall-clock time per phase of one control cycle, milliseconds.
struct SolveStats {
  double total_ms = 0.0;
  double self_distance_ms = 0.0;
  double env_distance_ms = 0.0;
  double linearization_ms = 0.0;
  double qp_ms = 0.0;
  int qp_iterations = 0;
  // Worst KKT residuals over the QPs of the cycle.
  KktResiduals kkt;

  double distance_ms() const { return self_distance_ms + env_distance_ms; }
};

struct SolveResult {
  std::vector<OcpInput> u_sequence;   // N - 1
  std::vector<OcpState> x_prediction;  // N
  SolveStatus status = SolveStatus::kOptimal;
  SolveStats stats;
};

}  // namespace rmpcc

#endif  // RMPCC_OCP_HPP_
