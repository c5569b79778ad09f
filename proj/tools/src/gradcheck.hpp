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

#ifndef RMPCC_TOOLS_GRADCHECK_HPP_
#define RMPCC_TOOLS_GRADCHECK_HPP_

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "rmpcc/robot_model.hpp"

namespace rmpcc::tools {

// Worst analytic-vs-central-difference mismatch seen for one quantity. The
// error of a sample is max|A - F| / max(max|F|, kGradcheckFloor).
struct QuantityCheck {
  std::string name;
  int samples = 0;
  int skipped = 0;
  double worst = 0.0;
  int worst_sample = -1;
  Eigen::VectorXd worst_q;
  double worst_s = 0.0;
};

struct GradcheckReport {
  std::vector<QuantityCheck> quantities;
  double tolerance = 1e-4;
  bool Passed() const;
};

inline constexpr double kGradcheckFloor = 1e-3;
inline constexpr double kGradcheckStep = 1e-6;

// Runs every Jacobian / gradient check at `count` random states. Throws
// std::invalid_argument when count < 1.
GradcheckReport RunGradcheck(const RobotModel& model, std::uint64_t seed, int count,
                             double tolerance = 1e-4);

void PrintGradcheckReport(const GradcheckReport& report, std::ostream& out);

}  // namespace rmpcc::tools

#endif  // RMPCC_TOOLS_GRADCHECK_HPP_
