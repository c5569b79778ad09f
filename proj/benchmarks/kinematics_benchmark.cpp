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

#include <benchmark/benchmark.h>

#include "bench_util.hpp"
#include "rmpcc/kinematics.hpp"

namespace rmpcc {
namespace {

void BM_ForwardKinematics(benchmark::State& state) {
  const auto model = bench::Panda();
  const Eigen::VectorXd q = bench::PandaReady();
  for (auto _ : state) benchmark::DoNotOptimize(ForwardKinematics(*model, q));
}
BENCHMARK(BM_ForwardKinematics);

void BM_GeometricJacobian(benchmark::State& state) {
  const auto model = bench::Panda();
  const KinematicState fk = ForwardKinematics(*model, bench::PandaReady());
  for (auto _ : state) benchmark::DoNotOptimize(GeometricJacobian(*model, fk));
}
BENCHMARK(BM_GeometricJacobian);

void BM_ManipulabilityGradient(benchmark::State& state) {
  const auto model = bench::Panda();
  const Eigen::VectorXd q = bench::PandaReady();
  const auto mode = state.range(0) == 0 ? GradientMode::kAnalytic : GradientMode::kFiniteDifference;
  for (auto _ : state) benchmark::DoNotOptimize(ManipulabilityGradient(*model, q, mode));
}
BENCHMARK(BM_ManipulabilityGradient)->Arg(0)->Arg(1)->ArgName("fd");

}  // namespace
}  // namespace rmpcc
