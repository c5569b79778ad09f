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

#include "rmpcc/ocp.hpp"

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace rmpcc {

OcpState DiscreteDynamics(const OcpState& x, const OcpInput& u, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("DiscreteDynamics: dt must be positive");
  if (x.q.size() != u.qd.size()) throw std::invalid_argument("DiscreteDynamics: size mismatch");
  OcpState next;
  next.q = x.q + u.qd * dt;
  next.s = x.s + x.v_s * dt + 0.5 * u.vd_s * dt * dt;
  next.v_s = x.v_s + u.vd_s * dt;
  return next;
}

Eigen::VectorXd StackState(const OcpState& x) {
  const int n = static_cast<int>(x.q.size());
  Eigen::VectorXd v(n + 2);
  v << x.q, x.s, x.v_s;
  return v;
}

OcpState UnstackState(const Eigen::VectorXd& v, int dof) {
  if (v.size() != dof + 2) throw std::invalid_argument("UnstackState: size mismatch");
  return {v.head(dof), v[dof], v[dof + 1]};
}

Eigen::VectorXd StackInput(const OcpInput& u) {
  const int n = static_cast<int>(u.qd.size());
  Eigen::VectorXd v(n + 1);
  v << u.qd, u.vd_s;
  return v;
}

OcpInput UnstackInput(const Eigen::VectorXd& v, int dof) {
  if (v.size() != dof + 1) throw std::invalid_argument("UnstackInput: size mismatch");
  return {v.head(dof), v[dof]};
}

void OcpConfig::Validate() const {
  auto require = [](bool ok, const std::string& what) {
    if (!ok) throw std::invalid_argument("OCP config: " + what);
  };
  require(horizon >= 2, "horizon must be >= 2");
  require(dt > 0.0, "dt must be > 0");
  require(sqp_iterations >= 1, "sqp_iters must be >= 1");
  require(threads >= 0, "threads must be >= 0");
  const Weights& w = weights;
  require(w.w_c > 0 && w.w_l > 0 && w.w_vs > 0 && w.w_o > 0 && w.w_qd > 0 && w.w_dqd > 0 &&
              w.w_vds > 0,
          "all weights must be > 0");
  require(barriers.delta_sing > 0 && barriers.delta_self > 0 && barriers.delta_env > 0,
          "barrier delta must be > 0");
  require(bounds.s_min < bounds.s_max, "s_min must be < s_max");
  require(bounds.vs_min < bounds.vs_max, "vs_min must be < vs_max");
  require(bounds.vds_min < bounds.vds_max, "vds_min must be < vds_max");
  require(distance.softmin_temperature >= 0.0, "softmin_temperature must be >= 0");
  require(distance.self_backend != SelfDistanceBackend::kMlp || !distance.mlp_weights.empty(),
          "mlp backend needs mlp_weights");
}

int ResolveThreadCount(int configured) {
  if (configured > 0) return configured;
  if (const char* env = std::getenv("RMPCC_THREADS")) {
    char* end = nullptr;
    const long value = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && value >= 1 && value <= 256) return static_cast<int>(value);
  }
  return 1;
}

const char* SolveStatusName(SolveStatus status) {
  switch (status) {
    case SolveStatus::kOptimal:
      return "optimal";
    case SolveStatus::kMaxIterations:
      return "max_iter";
    case SolveStatus::kInfeasibleQp:
      return "infeasible_qp";
  }
  return "unknown";
}

}  // namespace rmpcc
