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

#ifndef RMPCC_CONTROLLER_HPP_
#define RMPCC_CONTROLLER_HPP_

#include <string>

#include "rmpcc/distance_field.hpp"
#include "rmpcc/horizon.hpp"
#include "rmpcc/ocp.hpp"

namespace rmpcc {

// One receding-horizon controller instance per control loop.
class Controller {
 public:
  virtual ~Controller() = default;

  // Solves the OCP from x0 at time t. `warm` is the previous cycle's result
  // (shifted by one stage internally); `obstacle` may be null.
  virtual SolveResult Solve(const OcpState& x0, double t, const ObstacleSphere* obstacle,
                            const SolveResult* warm) = 0;

  // Path parameter at which this controller's reference is evaluated.
  virtual double ReferenceParameter(const OcpState& x, double t) const = 0;

  virtual std::string name() const = 0;

  virtual HorizonSolver& engine() = 0;
};

// Stacks warm->u_sequence shifted one stage forward (last input repeated),
// or zeros without a warm start.
Eigen::VectorXd ShiftedInputs(const SolveResult* warm, int horizon, int input_dim,
                              bool include_path_input);

}  // namespace rmpcc

#endif  // RMPCC_CONTROLLER_HPP_
