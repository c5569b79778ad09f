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

#ifndef RMPCC_BENCHMARKS_BENCH_UTIL_HPP_
#define RMPCC_BENCHMARKS_BENCH_UTIL_HPP_

#include <memory>
#include <string>

#include <Eigen/Core>

#include "rmpcc/robot_model.hpp"

namespace rmpcc::bench {

inline std::shared_ptr<const RobotModel> Panda() {
  static const auto model = std::make_shared<const RobotModel>(
      LoadRobotModel(std::string(RMPCC_BENCH_DATA_DIR) + "/panda.robot"));
  return model;
}

inline Eigen::VectorXd PandaReady() {
  Eigen::VectorXd q(7);
  q << 0.0, -0.785, 0.0, -2.356, 0.0, 1.571, 0.785;
  return q;
}

}  // namespace rmpcc::bench

#endif  // RMPCC_BENCHMARKS_BENCH_UTIL_HPP_
