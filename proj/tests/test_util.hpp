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

#ifndef RMPCC_TESTS_TEST_UTIL_HPP_
#define RMPCC_TESTS_TEST_UTIL_HPP_

#include <Eigen/Core>
#include <functional>
#include <memory>
#include <random>
#include <string>

#include "rmpcc/robot_model.hpp"

namespace rmpcc::testing {

inline std::string DataPath(const std::string& name) {
  return std::string(RMPCC_TEST_DATA_DIR) + "/" + name;
}

inline std::string FixturePath(const std::string& name) {
  return std::string(RMPCC_TEST_FIXTURE_DIR) + "/" + name;
}

inline std::shared_ptr<const RobotModel> LoadShared(const std::string& name) {
  return std::make_shared<const RobotModel>(LoadRobotModel(DataPath(name)));
}

// Uniform sample inside the joint limits, shrunk by `margin` on each side.
inline Eigen::VectorXd RandomConfiguration(const RobotModel& model, std::mt19937_64& rng,
                                           double margin = 0.0) {
  Eigen::VectorXd q(model.dof());
  for (int i = 0; i < model.dof(); ++i) {
    std::uniform_real_distribution<double> d(model.joints[i].q_min + margin,
                                             model.joints[i].q_max - margin);
    q[i] = d(rng);
  }
  return q;
}

inline Eigen::Vector3d RandomVector3(std::mt19937_64& rng, double scale = 1.0) {
  std::uniform_real_distribution<double> d(-scale, scale);
  return Eigen::Vector3d(d(rng), d(rng), d(rng));
}

// Central-difference Jacobian of f at x.
inline Eigen::MatrixXd NumericJacobian(
    const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& f, const Eigen::VectorXd& x,
    double step = 1e-6) {
  const Eigen::VectorXd f0 = f(x);
  Eigen::MatrixXd jac(f0.size(), x.size());
  for (int i = 0; i < x.size(); ++i) {
    Eigen::VectorXd xp = x;
    Eigen::VectorXd xm = x;
    xp[i] += step;
    xm[i] -= step;
    jac.col(i) = (f(xp) - f(xm)) / (2.0 * step);
  }
  return jac;
}

// max|a - b| / max(max|b|, floor).
inline double RelativeError(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b,
                            double floor = 1e-3) {
  return (a - b).cwiseAbs().maxCoeff() / std::max(b.cwiseAbs().maxCoeff(), floor);
}

}  // namespace rmpcc::testing

#endif  // RMPCC_TESTS_TEST_UTIL_HPP_
