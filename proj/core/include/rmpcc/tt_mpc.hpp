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

#ifndef RMPCC_TT_MPC_HPP_
#define RMPCC_TT_MPC_HPP_

#include <memory>

#include "rmpcc/controller.hpp"
#include "rmpcc/path_spline.hpp"
#include "rmpcc/robot_model.hpp"

namespace rmpcc {

// s_ref(t) = clamp(v_desired * t, 0, 1).
double TimeReference(double t, double v_desired);

// Time-indexed tracking formulation: x = q, u = q̇, reference p_r(s_ref),
// R_r(s_ref) at s_ref(t + k dt). Same barriers and input costs as the
// contouring formulation.
class TrackingFormulation final : public HorizonFormulation {
 public:
  TrackingFormulation(std::shared_ptr<const RobotModel> model,
                      std::shared_ptr<const PathSpline> path, const OcpConfig& config);

  int state_dim() const override { return n_; }
  int input_dim() const override { return n_; }
  const Eigen::MatrixXd& A() const override { return a_; }
  const Eigen::MatrixXd& B() const override { return b_; }
  const Eigen::VectorXd& state_lower() const override { return x_lower_; }
  const Eigen::VectorXd& state_upper() const override { return x_upper_; }
  const Eigen::VectorXd& input_lower() const override { return u_lower_; }
  const Eigen::VectorXd& input_upper() const override { return u_upper_; }

  StageResiduals Residuals(int k, double t, const Eigen::VectorXd& x, const KinematicState& state,
                           const Eigen::VectorXd* u, const Eigen::VectorXd* u_prev) const override;

 private:
  std::shared_ptr<const RobotModel> model_;
  std::shared_ptr<const PathSpline> path_;
  Weights weights_;
  double dt_;
  int n_;
  Eigen::MatrixXd a_;
  Eigen::MatrixXd b_;
  Eigen::VectorXd x_lower_;
  Eigen::VectorXd x_upper_;
  Eigen::VectorXd u_lower_;
  Eigen::VectorXd u_upper_;
};

class TtMpcController final : public Controller {
 public:
  TtMpcController(std::shared_ptr<const RobotModel> model, std::shared_ptr<const PathSpline> path,
                  const OcpConfig& config);

  // Only x0.q is used; the returned states carry s = s_ref and v_s = ds_ref/dt.
  SolveResult Solve(const OcpState& x0, double t, const ObstacleSphere* obstacle,
                    const SolveResult* warm) override;
  double ReferenceParameter(const OcpState& /*x*/, double t) const override {
    return TimeReference(t, config_.weights.v_desired);
  }
  std::string name() const override { return "tt_mpc"; }
  HorizonSolver& engine() override { return *engine_; }

 private:
  std::shared_ptr<const RobotModel> model_;
  OcpConfig config_;
  std::unique_ptr<HorizonSolver> engine_;
};

}  // namespace rmpcc

#endif  // RMPCC_TT_MPC_HPP_
