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

#include "rmpcc/path_errors.hpp"

namespace rmpcc {

PathErrors ComputePathErrors(const PathSpline& path, const EePose& ee, double s) {
  const PositionSample position = path.SamplePosition(s);
  const TangentSample tangent = path.UnitTangent(s);
  const OrientationSample orientation = path.SampleOrientation(s);
  PathErrors out;
  out.e = position.p - ee.position;
  out.e_l = tangent.t_hat.dot(out.e) * tangent.t_hat;
  out.e_c = out.e - out.e_l;
  out.e_o = lie::Log(orientation.rotation.transpose() * ee.orientation);
  return out;
}

PathLinearization LinearizePathErrors(const PathSpline& path, const RobotModel& model,
                                      const KinematicState& state, double s) {
  const int n = model.dof();
  const PositionSample position = path.SamplePosition(s);
  const TangentSample tangent = path.UnitTangent(s);
  const OrientationSample orientation = path.SampleOrientation(s);
  const Eigen::Vector3d& t_hat = tangent.t_hat;

  PathLinearization out;
  PathErrors& err = out.errors;
  err.e = position.p - state.ee.position;
  err.e_l = t_hat.dot(err.e) * t_hat;
  err.e_c = err.e - err.e_l;
  err.e_o = lie::Log(orientation.rotation.transpose() * state.ee.orientation);

  const Jacobian6 jacobian = GeometricJacobian(model, state);
  PathErrorJacobians& jac = out.jacobians;
  jac.de = Eigen::Matrix3Xd::Zero(3, n + 2);
  jac.de.leftCols(n) = -jacobian.topRows<3>();
  jac.de.col(n) = position.dp_ds;

  Eigen::Matrix3Xd dt_hat = Eigen::Matrix3Xd::Zero(3, n + 2);
  dt_hat.col(n) = tangent.dt_hat_ds;
  jac.de_l = t_hat.dot(err.e) * dt_hat + t_hat * (err.e.transpose() * dt_hat) +
             t_hat * (t_hat.transpose() * jac.de);
  jac.de_c = jac.de - jac.de_l;

  const Eigen::Matrix3d jr_inv_rt = lie::RightJacobianInverse(err.e_o) *
                                    state.ee.orientation.transpose();
  jac.de_o = Eigen::Matrix3Xd::Zero(3, n + 2);
  jac.de_o.leftCols(n) = jr_inv_rt * jacobian.bottomRows<3>();
#ifdef RMPCC_MUTANT_ORIENTATION_SIGN
  // Deliberately wrong sign, compiled only into the mutation-test library.
  jac.de_o.leftCols(n) *= -1.0;
#endif
  jac.de_o.col(n) = -jr_inv_rt * orientation.world_rate;
  return out;
}

}  // namespace rmpcc
