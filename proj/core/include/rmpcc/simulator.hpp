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

#ifndef RMPCC_SIMULATOR_HPP_
#define RMPCC_SIMULATOR_HPP_

#include <memory>
#include <stdexcept>
#include <string>

#include "rmpcc/controller.hpp"
#include "rmpcc/ocp.hpp"
#include "rmpcc/path_spline.hpp"
#include "rmpcc/robot_model.hpp"
#include "rmpcc/scenario.hpp"
#include "rmpcc/trace.hpp"

namespace rmpcc {

// Raised when the closed loop produces a non-finite state.
class SimulationAbort : public std::runtime_error {
 public:
  SimulationAbort(const std::string& message, int record_index)
      : std::runtime_error(message), record_index_(record_index) {}
  int record_index() const { return record_index_; }

 private:
  int record_index_;
};

// Everything a run needs, resolved from a scenario.
struct SimulationSetup {
  std::shared_ptr<const RobotModel> model;
  std::shared_ptr<const PathSpline> path;
  OcpConfig config;
  Eigen::VectorXd q0;
};

// Loads the robot and OCP config, builds the path and resolves q0 (inverse
// kinematics onto the first via-point when the scenario gives only a seed).
// Throws std::invalid_argument / std::runtime_error on bad inputs, or when IK
// misses the first via-point by more than 1e-6.
SimulationSetup PrepareSimulation(const Scenario& scenario);

std::unique_ptr<Controller> MakeController(ControllerKind kind, const SimulationSetup& setup);

struct SimulationOptions {
  // When false the timing columns are written as 0, which makes traces of
  // repeated runs byte-identical.
  bool record_timing = true;
};

// Runs the kinematic closed loop: at every tick read the obstacle, solve,
// apply the first input (or the previous input after an infeasible QP), log.
// Throws SimulationAbort on a non-finite state.
TraceLog RunClosedLoop(const Scenario& scenario, const SimulationSetup& setup,
                       const SimulationOptions& options = {});
TraceLog RunClosedLoop(const Scenario& scenario, const SimulationOptions& options = {});

}  // namespace rmpcc

#endif  // RMPCC_SIMULATOR_HPP_
