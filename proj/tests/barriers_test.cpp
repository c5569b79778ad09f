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

#include "rmpcc/barriers.hpp"

#include <cmath>
#include <limits>
#include <memory>
#include <random>
#include <stdexcept>

#include <gtest/gtest.h>

#include "rmpcc/kinematics.hpp"
#include "rmpcc/qp_solver.hpp"
#include "rmpcc/stage_constraints.hpp"
#include "test_util.hpp"

namespace rmpcc {
namespace {

using ::rmpcc::testing::LoadShared;
using ::rmpcc::testing::RandomConfiguration;

constexpr double kDelta = 0.01;

TEST(RbfTest, LogBranch) {
  EXPECT_DOUBLE_EQ(Rbf(1.0, kDelta).value, -std::log(2.0));
  EXPECT_NEAR(Rbf(1.0, kDelta).value, -0.6931, 1e-4);
  EXPECT_DOUBLE_EQ(Rbf(0.5, kDelta).value, -std::log(1.5));
}

// Second-order expansion of -log(1 + h) about delta, evaluated at h = 0.
TEST(RbfTest, QuadraticBranchAtZero) {
  const double f0 = -std::log(1.0 + kDelta);
  const double f1 = -1.0 / (1.0 + kDelta);
  const double f2 = 1.0 / ((1.0 + kDelta) * (1.0 + kDelta));
  const double expected = f0 + f1 * (0.0 - kDelta) + 0.5 * f2 * kDelta * kDelta;
  EXPECT_NEAR(Rbf(0.0, kDelta).value, expected, 1e-17);
  EXPECT_NEAR(Rbf(0.0, kDelta).derivative, f1 - f2 * kDelta, 1e-17);
}

TEST(RbfTest, JunctionIsTwiceContinuous) {
  const RbfValue below = Rbf(kDelta - 1e-15, kDelta);
  const RbfValue above = Rbf(kDelta, kDelta);
  EXPECT_LT(std::abs(below.value - above.value), 1e-12);
  EXPECT_LT(std::abs(below.derivative - above.derivative), 1e-10);
  EXPECT_LT(std::abs(below.second_derivative - above.second_derivative), 1e-10);
}

TEST(RbfTest, StrictlyDecreasing) {
  for (double h = -0.9; h < 5.0; h += 0.01) {
    EXPECT_LT(Rbf(h, kDelta).derivative, 0.0) << h;
    EXPECT_GT(Rbf(h, kDelta).value, Rbf(h + 0.01, kDelta).value) << h;
  }
}

TEST(RbfTest, DerivativeMatchesFiniteDifferences) {
  for (double h : {-0.5, -0.01, 0.0, 0.005, 0.02, 0.3, 2.0}) {
    const double fd = (Rbf(h + 1e-7, kDelta).value - Rbf(h - 1e-7, kDelta).value) / 2e-7;
    EXPECT_NEAR(Rbf(h, kDelta).derivative, fd, 1e-7) << h;
  }
}

TEST(RbfTest, RejectsNonPositiveDelta) {
  EXPECT_THROW(Rbf(0.5, 0.0), std::invalid_argument);
}

TEST(CbfRowTest, LargeMarginWithZeroGradientIsVacuous) {
  const ConstraintRow row = CbfRow(10.0, Eigen::VectorXd::Zero(3), kDelta, 0, 4);
  EXPECT_GT(row.rhs, 0.0);
  EXPECT_DOUBLE_EQ(row.rhs, std::log(11.0));
  EXPECT_TRUE(row.coeff_u.isZero(0.0));
  EXPECT_TRUE(row.coeff_q.isZero(0.0));
}

TEST(CbfRowTest, BoundaryRowUsesQuadraticBranch) {
  const Eigen::VectorXd e1 = Eigen::Vector3d::UnitX();
  const ConstraintRow row = CbfRow(0.0, e1, kDelta, 2, 4);
  EXPECT_EQ(row.coeff_u.size(), 4);
  EXPECT_DOUBLE_EQ(row.coeff_u[0], -1.0);
  EXPECT_DOUBLE_EQ(row.coeff_u[3], 0.0);
  EXPECT_DOUBLE_EQ(row.rhs, -Rbf(0.0, kDelta).value);
  EXPECT_EQ(row.stage, 2);
  // q̇_1 must be at least RBF(0).
  Eigen::VectorXd u = Eigen::VectorXd::Zero(4);
  u[0] = Rbf(0.0, kDelta).value;
  EXPECT_NEAR(row.Violation(u, Eigen::VectorXd::Zero(3)), 0.0, 1e-18);
}

TEST(CbfRowTest, MarginOfHalfGivesLogRhs) {
  const ConstraintRow row = CbfRow(0.5, Eigen::Vector3d(0.2, -0.1, 0.3), kDelta, 0, 3);
  EXPECT_DOUBLE_EQ(row.rhs, std::log(1.5));
  EXPECT_TRUE(row.coeff_q.isApprox(Rbf(0.5, kDelta).derivative * Eigen::Vector3d(0.2, -0.1, 0.3)));
}

// Along the gradient direction the row is -|g| t <= rhs, so the smallest
// feasible t for a negative margin is -rhs / |g|.
TEST(CbfRowTest, DoublingGradientHalvesMinimalInput) {
  const Eigen::VectorXd g = Eigen::Vector3d(0.3, -0.4, 1.2);
  const ConstraintRow single = CbfRow(-0.2, g, kDelta, 0, 3);
  const ConstraintRow twice = CbfRow(-0.2, 2.0 * g, kDelta, 0, 3);
  const double t_single = -single.rhs / single.coeff_u.norm();
  const double t_twice = -twice.rhs / twice.coeff_u.norm();
  EXPECT_NEAR(t_twice, 0.5 * t_single, 1e-15);
}

TEST(CbfRowTest, RejectsShortInput) {
  EXPECT_THROW(CbfRow(0.1, Eigen::Vector3d::Ones(), kDelta, 0, 2), std::invalid_argument);
}

// Scalar system ẋ = u with h = x, filtered by min (u - u_nom)² s.t.
// RBF(x) <= u while the nominal input drives x down.
TEST(CbfFilterTest, ScalarSafeSetIsForwardInvariant) {
  QpSolver solver;
  QpProblem qp;
  qp.H = Eigen::MatrixXd::Identity(1, 1);
  qp.g = Eigen::VectorXd::Constant(1, 1.0);  // u_nom = -1
  qp.A = Eigen::MatrixXd::Identity(1, 1);
  qp.lower.resize(1);
  qp.upper = Eigen::VectorXd::Constant(1, std::numeric_limits<double>::infinity());
  constexpr double kDt = 1e-3;
  double x = 0.5;
  double lowest = x;
  for (int step = 0; step < 10000; ++step) {
    qp.lower[0] = Rbf(x, kDelta).value;
    const QpSolution solution = solver.Solve(qp);
    ASSERT_EQ(solution.status, QpStatus::kOptimal);
    x += kDt * solution.primal[0];
    lowest = std::min(lowest, x);
  }
  EXPECT_GT(lowest, -1e-6);
  EXPECT_LT(x, 1e-3);
}

class StageConstraintsTest : public ::testing::Test {
 protected:
  void SetUp() override {
    model_ = LoadShared("panda.robot");
    field_ = std::make_shared<CapsuleSelfDistance>(model_);
    builder_ = std::make_unique<StageConstraintBuilder>(model_, field_, BarrierSettings{},
                                                        GradientMode::kAnalytic);
    q_ << 0.1, -0.6, 0.2, -2.0, 0.1, 1.6, 0.5;
  }

  std::shared_ptr<const RobotModel> model_;
  std::shared_ptr<const CapsuleSelfDistance> field_;
  std::unique_ptr<StageConstraintBuilder> builder_;
  Eigen::VectorXd q_ = Eigen::VectorXd(7);
};

TEST_F(StageConstraintsTest, RowCountIsTwoPlusLinks) {
  const ObstacleSphere obstacle{Eigen::Vector3d(0.5, 0.3, 0.5), 0.1};
  const StageConstraints c =
      builder_->Build(3, q_, ForwardKinematics(*model_, q_), &obstacle, 8);
  EXPECT_EQ(c.rows.size(), 2u + CountEnvLinks(*model_));
  EXPECT_EQ(CountEnvLinks(*model_), 7);
  for (const ConstraintRow& row : c.rows) EXPECT_EQ(row.stage, 3);
  const StageConstraints free = builder_->Build(0, q_, ForwardKinematics(*model_, q_), nullptr, 8);
  EXPECT_EQ(free.rows.size(), 2u);
}

TEST_F(StageConstraintsTest, RowsUseMarginsInsideH) {
  const ObstacleSphere obstacle{Eigen::Vector3d(0.5, 0.3, 0.5), 0.1};
  const KinematicState state = ForwardKinematics(*model_, q_);
  const StageConstraints c = builder_->Build(0, q_, state, &obstacle, 8);
  const BarrierSettings b;
  const double mu = Manipulability(*model_, q_);
  EXPECT_DOUBLE_EQ(c.rows[0].rhs, -Rbf(mu - b.eps_sing, b.delta_sing).value);
  const double d_self = field_->Evaluate(q_, state).distance;
  EXPECT_DOUBLE_EQ(c.rows[1].rhs, -Rbf(d_self - b.eps_self, b.delta_self).value);
  const std::vector<LinkDistance> env = EnvLinkDistances(*model_, state, obstacle.center);
  for (std::size_t l = 0; l < env.size(); ++l) {
    const ConstraintRow& row = c.rows[2 + l];
    EXPECT_EQ(row.kind, BarrierKind::kEnvCollision);
    EXPECT_EQ(row.link, env[l].link);
    EXPECT_DOUBLE_EQ(row.rhs,
                     -Rbf(env[l].value.distance - obstacle.radius - b.eps_env, b.delta_env).value);
  }
}

TEST_F(StageConstraintsTest, FarObstacleRowsAreRedundant) {
  const ObstacleSphere obstacle{Eigen::Vector3d(100, 0, 0), 0.1};
  const StageConstraints c =
      builder_->Build(0, q_, ForwardKinematics(*model_, q_), &obstacle, 8);
  Eigen::VectorXd max_u(8);
  max_u << model_->qd_max(), 2.0;
  const Eigen::VectorXd max_dq = Eigen::VectorXd::Constant(7, 0.1);
  for (const ConstraintRow& row : c.rows) {
    if (row.kind == BarrierKind::kEnvCollision) {
      EXPECT_TRUE(IsRedundantRow(row, max_u, max_dq));
    }
  }
}

TEST_F(StageConstraintsTest, SecantRateIsIdentityForZeroInput) {
  const ObstacleSphere obstacle{Eigen::Vector3d(0.5, 0.3, 0.5), 0.1};
  const KinematicState state = ForwardKinematics(*model_, q_);
  StageConstraints c = builder_->Build(0, q_, state, &obstacle, 8);
  const StageConstraints original = c;
  ApplySecantRate(c.measures, Eigen::VectorXd::Zero(7), 0.01, &c);
  for (std::size_t i = 0; i < c.rows.size(); ++i) {
    EXPECT_TRUE(c.rows[i].coeff_u.isApprox(original.rows[i].coeff_u));
    EXPECT_DOUBLE_EQ(c.rows[i].rhs, original.rows[i].rhs);
  }
}

// At q̇ = q̇̄ the secant row states RBF(h_k) <= (h(q_k + dt q̇̄) - h_k) / dt.
TEST_F(StageConstraintsTest, SecantRateIsExactAtIterate) {
  constexpr double kDt = 0.01;
  const ObstacleSphere obstacle{Eigen::Vector3d(0.5, 0.3, 0.5), 0.1};
  const KinematicState state = ForwardKinematics(*model_, q_);
  StageConstraints c = builder_->Build(0, q_, state, &obstacle, 8);
  const Eigen::VectorXd qd = Eigen::VectorXd::LinSpaced(7, -1.5, 2.0);
  const Eigen::VectorXd q_next = q_ + kDt * qd;
  const StageConstraints next =
      builder_->Build(1, q_next, ForwardKinematics(*model_, q_next), &obstacle, 8);
  const StageConstraints original = c;
  ApplySecantRate(next.measures, qd, kDt, &c);
  Eigen::VectorXd u(8);
  u << qd, 0.3;
  const BarrierSettings b;
  const double mu_now = c.measures.manipulability.distance;
  const double mu_next = next.measures.manipulability.distance;
  EXPECT_NEAR(c.rows[0].Violation(u, Eigen::VectorXd::Zero(7)),
              Rbf(mu_now - b.eps_sing, b.delta_sing).value - (mu_next - mu_now) / kDt, 1e-12);
  for (std::size_t l = 0; l < c.measures.env_distances.size(); ++l) {
    const double d_now = c.measures.env_distances[l].value.distance;
    const double d_next = next.measures.env_distances[l].value.distance;
    EXPECT_NEAR(c.rows[2 + l].Violation(u, Eigen::VectorXd::Zero(7)),
                Rbf(d_now - obstacle.radius - b.eps_env, b.delta_env).value -
                    (d_next - d_now) / kDt,
                1e-12);
    // The state coefficients keep the tangent form.
    EXPECT_TRUE(c.rows[2 + l].coeff_q.isApprox(original.rows[2 + l].coeff_q));
  }
}

TEST_F(StageConstraintsTest, SecantRateRejectsMismatchedMeasures) {
  const ObstacleSphere obstacle{Eigen::Vector3d(0.5, 0.3, 0.5), 0.1};
  StageConstraints c = builder_->Build(0, q_, ForwardKinematics(*model_, q_), &obstacle, 8);
  const StageConstraints without =
      builder_->Build(1, q_, ForwardKinematics(*model_, q_), nullptr, 8);
  EXPECT_THROW(ApplySecantRate(without.measures, Eigen::VectorXd::Zero(7), 0.01, &c),
               std::invalid_argument);
  EXPECT_THROW(ApplySecantRate(c.measures, Eigen::VectorXd::Zero(7), 0.0, &c),
               std::invalid_argument);
}

TEST_F(StageConstraintsTest, DisabledBarriersEmitNoRows) {
  BarrierSettings off;
  off.singularity = false;
  off.self_collision = false;
  off.env_collision = false;
  const StageConstraintBuilder builder(model_, field_, off, GradientMode::kAnalytic);
  const ObstacleSphere obstacle{Eigen::Vector3d(0.5, 0.3, 0.5), 0.1};
  const StageConstraints c = builder.Build(0, q_, ForwardKinematics(*model_, q_), &obstacle, 8);
  EXPECT_TRUE(c.rows.empty());
  EXPECT_EQ(c.measures.env_distances.size(), 7u);
  EXPECT_GT(c.measures.manipulability.distance, 0.0);
}

}  // namespace
}  // namespace rmpcc
