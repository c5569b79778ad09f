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

#include <memory>

#include <benchmark/benchmark.h>

#include "bench_util.hpp"
#include "rmpcc/config.hpp"
#include "rmpcc/kinematics.hpp"
#include "rmpcc/rmpcc_solver.hpp"
#include "rmpcc/scenario.hpp"

namespace rmpcc {
namespace {

// One receding-horizon solve on the lemniscate start, warm-started from the
// previous solution. Arg 1 adds a sphere next to the end effector.
void BM_RmpccSolve(benchmark::State& state) {
  const auto model = bench::Panda();
  const auto path = std::make_shared<const PathSpline>(LemniscateViaPoints(0.3, 33));
  OcpConfig config = LoadOcpConfig(std::string(RMPCC_BENCH_DATA_DIR) + "/ocp.toml");
  RmpccController controller(model, path, config);
  OcpState x0;
  x0.q = SolveInverseKinematics(
      *model, {path->SamplePosition(0.0).p, path->SampleOrientation(0.0).rotation},
      bench::PandaReady());
  x0.s = 0.0;
  x0.v_s = config.weights.v_desired;
  const ObstacleSphere sphere{ForwardKinematics(*model, x0.q).ee.position +
                                  Eigen::Vector3d(0.0, 0.2, 0.0),
                              0.08};
  const ObstacleSphere* obstacle = state.range(0) == 1 ? &sphere : nullptr;
  SolveResult previous = controller.Solve(x0, 0.0, obstacle, nullptr);
  for (auto _ : state) {
    SolveResult result = controller.Solve(x0, 0.0, obstacle, &previous);
    benchmark::DoNotOptimize(result);
  }
}
BENCHMARK(BM_RmpccSolve)->Arg(0)->Arg(1)->ArgName("obstacle")->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace rmpcc
