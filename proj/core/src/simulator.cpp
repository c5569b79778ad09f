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

#include "rmpcc/simulator.hpp"

#include <algorithm>
#include <limits>
#include <random>

#include "rmpcc/config.hpp"
#include "rmpcc/distance_field.hpp"
#include "rmpcc/kinematics.hpp"
#include "rmpcc/path_errors.hpp"
#include "rmpcc/rmpcc_solver.hpp"
#include "rmpcc/tt_mpc.hpp"

namespace rmpcc {

SimulationSetup PrepareSimulation(const Scenario& scenario) {
  scenario.Validate();
  SimulationSetup setup;
  setup.model = std::make_shared<const RobotModel>(LoadRobotModel(scenario.robot_path));
  setup.config = scenario.ocp_path.empty() ? OcpConfig{} : LoadOcpConfig(scenario.ocp_path);
  setup.config.dt = scenario.dt;
  setup.config.Validate();
  setup.path = std::make_shared<const PathSpline>(scenario.via_points);
  const int n = setup.model->dof();
  if (scenario.q0.size() > 0) {
    if (scenario.q0.size() != n) {
      throw std::invalid_argument("scenario q0 has " + std::to_string(scenario.q0.size()) +
                                  " entries, robot has " + std::to_string(n) + " joints");
    }
    setup.q0 = scenario.q0;
  } else {
    if (scenario.ik_seed.size() != n) {
      throw std::invalid_argument("scenario ik_seed does not match the robot's joint count");
    }
    const ViaPoint& first = scenario.via_points.front();
    setup.q0 = SolveInverseKinematics(*setup.model, {first.position, first.orientation},
                                      scenario.ik_seed);
    const KinematicState state = ForwardKinematics(*setup.model, setup.q0);
    const double miss = (state.ee.position - first.position).norm() +
                        lie::Log(first.orientation.transpose() * state.ee.orientation).norm();
    if (miss > 1e-6) {
      throw std::invalid_argument("inverse kinematics cannot reach the first via-point");
    }
  }
  if ((setup.q0.array() < setup.model->q_min().array()).any() ||
      (setup.q0.array() > setup.model->q_max().array()).any()) {
    throw std::invalid_argument("initial configuration violates joint limits");
  }
  return setup;
}

std::unique_ptr<Controller> MakeController(ControllerKind kind, const SimulationSetup& setup) {
  if (kind == ControllerKind::kRmpcc) {
    return std::make_unique<RmpccController>(setup.model, setup.path, setup.config);
  }
  return std::make_unique<TtMpcController>(setup.model, setup.path, setup.config);
}

TraceLog RunClosedLoop(const Scenario& scenario, const SimulationOptions& options) {
  return RunClosedLoop(scenario, PrepareSimulation(scenario), options);
}

TraceLog RunClosedLoop(const Scenario& scenario, const SimulationSetup& setup,
                       const SimulationOptions& options) {
  const RobotModel& model = *setup.model;
  const int n = model.dof();
  const double dt = scenario.dt;
  std::unique_ptr<Controller> controller = MakeController(scenario.controller, setup);
  const bool tracking = scenario.controller == ControllerKind::kTtMpc;

  // Safety measures are logged on the capsule geometry regardless of the
  // backend the controller uses.
  std::unique_ptr<CapsuleSelfDistance> self_distance;
  try {
    self_distance = std::make_unique<CapsuleSelfDistance>(setup.model);
  } catch (const std::invalid_argument&) {
    self_distance.reset();
  }

  std::mt19937_64 rng(scenario.seed);
  std::normal_distribution<double> noise(0.0, 1.0);

  TraceLog trace;
  trace.dof = n;
  trace.dt = dt;
  const int ticks = scenario.num_ticks();
  trace.records.reserve(ticks);

  OcpState x{setup.q0, 0.0, scenario.vs0};
  OcpInput applied{Eigen::VectorXd::Zero(n), 0.0};
  SolveResult warm;
  bool has_warm = false;
  Eigen::Vector3d previous_velocity = Eigen::Vector3d::Zero();

  for (int k = 0; k < ticks; ++k) {
    const double t = k * dt;
    std::optional<ObstacleSphere> obstacle;
    if (scenario.obstacle) obstacle = scenario.obstacle->At(t);
    if (tracking) {
      x.s = TimeReference(t, setup.config.weights.v_desired);
      x.v_s = 0.0;
    }

    SolveResult result = controller->Solve(x, t, obstacle ? &*obstacle : nullptr,
                                           has_warm ? &warm : nullptr);
    if (result.status != SolveStatus::kInfeasibleQp) {
      applied = result.u_sequence.front();
    }
    if (tracking) applied.vd_s = 0.0;
    warm = std::move(result);
    has_warm = true;

    if (!x.q.allFinite() || !std::isfinite(x.s) || !std::isfinite(x.v_s) ||
        !applied.qd.allFinite() || !std::isfinite(applied.vd_s)) {
      throw SimulationAbort("non-finite state at record " + std::to_string(k) + " (t = " +
                                std::to_string(t) + " s)",
                            k);
    }

    const KinematicState state = ForwardKinematics(model, x.q);
    const Jacobian6 jacobian = GeometricJacobian(model, state);
    TraceRecord r;
    r.t = t;
    r.q = x.q;
    r.qd = applied.qd;
    r.s = x.s;
    r.vs = tracking ? (t * setup.config.weights.v_desired < 1.0 ? setup.config.weights.v_desired
                                                                 : 0.0)
                    : x.v_s;
    r.vds = applied.vd_s;
    const PathErrors errors =
        ComputePathErrors(*setup.path, state.ee, controller->ReferenceParameter(x, t));
    r.ec = errors.e_c.norm();
    r.eo = errors.e_o.norm();
    r.mu = Manipulability(model, jacobian);
    r.dself = self_distance ? self_distance->Evaluate(x.q, state).distance
                            : std::numeric_limits<double>::infinity();
    r.denv = std::numeric_limits<double>::infinity();
    if (obstacle) {
      for (const LinkDistance& link : EnvLinkDistances(model, state, obstacle->center)) {
        r.denv = std::min(r.denv, link.value.distance - obstacle->radius);
      }
    }
    const Eigen::Vector3d velocity = jacobian.topRows<3>() * applied.qd;
    r.ax = k == 0 ? 0.0 : (velocity - previous_velocity).norm() / dt;
    previous_velocity = velocity;
    r.status = SolveStatusName(warm.status);
    if (options.record_timing) {
      r.t_total = warm.stats.total_ms;
      r.t_dist = warm.stats.distance_ms();
      r.t_lin = warm.stats.linearization_ms;
      r.t_qp = warm.stats.qp_ms;
    }
    r.kkt = std::max({warm.stats.kkt.primal, warm.stats.kkt.dual, warm.stats.kkt.complementarity});
    trace.records.push_back(std::move(r));

    x = DiscreteDynamics(x, applied, dt);
    x.s = std::clamp(x.s, 0.0, 1.0);
    if (scenario.joint_noise > 0.0) {
      for (int i = 0; i < n; ++i) x.q[i] += scenario.joint_noise * noise(rng);
    }
  }
  return trace;
}

}  // namespace rmpcc
