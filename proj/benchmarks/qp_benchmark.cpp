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
#include <random>

#include <benchmark/benchmark.h>

#include "rmpcc/qp_solver.hpp"

namespace rmpcc {
namespace {

// Dense strictly convex QP with box rows on every variable plus `extra`
// general rows, shaped like a condensed horizon problem.
QpProblem HorizonShapedQp(int n, int extra, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  const Eigen::MatrixXd root = Eigen::MatrixXd::NullaryExpr(n, n, [&] { return normal(rng); });
  QpProblem qp;
  qp.H = root.transpose() * root / n + Eigen::MatrixXd::Identity(n, n);
  qp.g = Eigen::VectorXd::NullaryExpr(n, [&] { return 2.0 * normal(rng); });
  qp.A.resize(n + extra, n);
  qp.A.topRows(n).setIdentity();
  qp.A.bottomRows(extra) = Eigen::MatrixXd::NullaryExpr(extra, n, [&] { return normal(rng); });
  qp.lower = Eigen::VectorXd::Constant(n + extra, -1.0);
  qp.upper = Eigen::VectorXd::Constant(n + extra, 1.0);
  qp.lower.tail(extra).setConstant(-std::numeric_limits<double>::infinity());
  return qp;
}

void BM_QpSolveCold(benchmark::State& state) {
  const QpProblem qp = HorizonShapedQp(static_cast<int>(state.range(0)), 20, 3u);
  QpSolver solver;
  for (auto _ : state) benchmark::DoNotOptimize(solver.Solve(qp));
}
// 72 variables is the (N-1)(n+1) size for N = 10 on a 7-joint arm.
BENCHMARK(BM_QpSolveCold)->Arg(24)->Arg(72)->Arg(144)->Unit(benchmark::kMicrosecond);

void BM_QpSolveWarm(benchmark::State& state) {
  const QpProblem qp = HorizonShapedQp(72, 20, 3u);
  QpSolver solver;
  const QpSolution previous = solver.Solve(qp);
  for (auto _ : state) benchmark::DoNotOptimize(solver.Solve(qp, &previous));
}
BENCHMARK(BM_QpSolveWarm)->Unit(benchmark::kMicrosecond);

}  // namespace
}  // namespace rmpcc
