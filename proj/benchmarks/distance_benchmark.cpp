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
#include "rmpcc/distance_field.hpp"
#include "rmpcc/kinematics.hpp"
#include "rmpcc/mlp.hpp"
#include "rmpcc/segment_distance.hpp"

namespace rmpcc {
namespace {

void BM_SegmentSegmentDistance(benchmark::State& state) {
  const Eigen::Vector3d a0(0.0, 0.0, 0.0), a1(1.0, 0.2, 0.1);
  const Eigen::Vector3d b0(0.3, 1.0, -0.5), b1(0.6, -0.4, 0.7);
  for (auto _ : state) benchmark::DoNotOptimize(SegmentSegmentDistance(a0, a1, b0, b1));
}
BENCHMARK(BM_SegmentSegmentDistance);

void BM_CapsuleSelfDistance(benchmark::State& state) {
  const auto model = bench::Panda();
  const CapsuleSelfDistance field(model);
  const Eigen::VectorXd q = bench::PandaReady();
  const KinematicState fk = ForwardKinematics(*model, q);
  for (auto _ : state) benchmark::DoNotOptimize(field.Evaluate(q, fk));
}
BENCHMARK(BM_CapsuleSelfDistance);

// Same layer sizes as the self-distance network the backend expects.
void BM_MlpSelfDistance(benchmark::State& state) {
  const MlpSelfDistance field(MlpModel::Random(7, {64, 32}, 1, 1u), 7);
  const Eigen::VectorXd q = bench::PandaReady();
  const KinematicState fk = ForwardKinematics(*bench::Panda(), q);
  for (auto _ : state) benchmark::DoNotOptimize(field.Evaluate(q, fk));
}
BENCHMARK(BM_MlpSelfDistance);

void BM_EnvLinkDistances(benchmark::State& state) {
  const auto model = bench::Panda();
  const KinematicState fk = ForwardKinematics(*model, bench::PandaReady());
  const Eigen::Vector3d center(0.5, -0.3, 0.45);
  for (auto _ : state) benchmark::DoNotOptimize(EnvLinkDistances(*model, fk, center));
}
BENCHMARK(BM_EnvLinkDistances);

}  // namespace
}  // namespace rmpcc
