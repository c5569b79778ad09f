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

#include "rmpcc/controller.hpp"

namespace rmpcc {

Eigen::VectorXd ShiftedInputs(const SolveResult* warm, int horizon, int input_dim,
                              bool include_path_input) {
  const int count = horizon - 1;
  Eigen::VectorXd inputs = Eigen::VectorXd::Zero(count * input_dim);
  if (warm == nullptr || static_cast<int>(warm->u_sequence.size()) != count) return inputs;
  const int n = include_path_input ? input_dim - 1 : input_dim;
  for (int k = 0; k < count; ++k) {
    const OcpInput& u = warm->u_sequence[std::min(k + 1, count - 1)];
    if (u.qd.size() != n) return Eigen::VectorXd::Zero(count * input_dim);
    inputs.segment(k * input_dim, n) = u.qd;
    if (include_path_input) inputs[k * input_dim + n] = u.vd_s;
  }
  return inputs;
}

}  // namespace rmpcc
