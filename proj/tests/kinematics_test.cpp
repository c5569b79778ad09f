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

#include "rmpcc/kinematics.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

#include <gtest/gtest.h>

#include "rmpcc/liegroup.hpp"
#include "rmpcc/robot_model.hpp"
#include "test_util.hpp"

namespace rmpcc {
namespace {

using ::rmpcc::testing::DataPath;
using ::rmpcc::testing::NumericJacobian;
using ::rmpcc::testing::RandomConfiguration;
using ::rmpcc::testing::RelativeError;

constexpr double kPi = std::numbers::pi;

Eigen::VectorXd Q2(double a, double b) { return Eigen::Vector2d(a, b); }

class KinematicsTest : public ::testing::Test {
 protected:
  RobotModel planar_ = LoadRobotModel(DataPath("planar2.robot"));
  RobotModel panda_ = LoadRobotModel(DataPath("panda.robot"));
};

TEST_F(KinematicsTest, PlanarArmOutstretched) {
  const KinematicState state = ForwardKinematics(planar_, Q2(0, 0));
  EXPECT_LT((state.ee.position - Eigen::Vector3d(2, 0, 0)).norm(), 1e-15);
}

TEST_F(KinematicsTest, PlanarArmPointingUp) {
  const KinematicState state = ForwardKinematics(planar_, Q2(kPi / 2, 0));
  EXPECT_LT((state.ee.position - Eigen::Vector3d(0, 2, 0)).norm(), 1e-15);
}

TEST_F(KinematicsTest, PlanarJacobianFirstColumn) {
  const Jacobian6 j = GeometricJacobian(planar_, Q2(0, 0));
  EXPECT_LT((j.block<3, 1>(0, 0) - Eigen::Vector3d(0, 2, 0)).norm(), 1e-15);
  EXPECT_LT((j.block<3, 1>(3, 0) - Eigen::Vector3d(0, 0, 1)).norm(), 1e-15);
}

// Values from a plain product of modified-DH homogeneous matrices, computed
// outside this code base and frozen here.
TEST_F(KinematicsTest, PandaMatchesTransformChain) {
  Eigen::VectorXd q(7);
  q << 0, -0.785, 0, -2.356, 0, 1.571, 0.785;
  const KinematicState state = ForwardKinematics(panda_, q);
  const Eigen::Vector3d position(3.070195700516105e-01, -7.841394128006894e-17,
                                 4.868695582766445e-01);
  Eigen::Matrix3d rotation;
  rotation << 9.9999992073295552e-01, 3.9816338692764172e-04, 6.6813454107683452e-17,
      3.9816338692765993e-04, -9.9999992073295552e-01, -8.6630077958999753e-17,
      4.2276997396236920e-17, 8.6646917979717287e-17, -1.0;
  EXPECT_LT((state.ee.position - position).norm(), 1e-12);
  EXPECT_LT((state.ee.orientation - rotation).norm(), 1e-12);
  const Eigen::Vector3d frame4(-1.6499722502300168e-01, 2.0912209271668013e-18,
                               6.1484777049802786e-01);
  EXPECT_LT((state.link_frames[4].translation() - frame4).norm(), 1e-12);
}

TEST_F(KinematicsTest, PandaMatchesTransformChainAwayFromHome) {
  Eigen::VectorXd q(7);
  q << 0.3, -0.5, 0.2, -1.8, 0.4, 1.2, -0.6;
  const KinematicState state = ForwardKinematics(panda_, q);
  const Eigen::Vector3d position(0.24264704083857955, 0.2562110947847396, 0.6186934515900453);
  Eigen::Matrix3d rotation;
  rotation << -0.3669031099340885, 0.8991857116904001, -0.238426432705191, 0.8918715171128931,
      0.41287990985848166, 0.18464933522219432, 0.26447552794812673, -0.14489732891630877,
      -0.9534450478079367;
  EXPECT_LT((state.ee.position - position).norm(), 1e-12);
  EXPECT_LT((state.ee.orientation - rotation).norm(), 1e-12);
  const Eigen::Vector3d frame4(-0.08178749265013295, -0.00814334742600278,
                               0.6490802776806929);
  EXPECT_LT((state.link_frames[4].translation() - frame4).norm(), 1e-12);
}

void CheckJacobianAgainstFiniteDifferences(const RobotModel& model, unsigned seed) {
  std::mt19937_64 rng(seed);
  constexpr double kStep = 1e-6;
  for (int trial = 0; trial < 100; ++trial) {
    const Eigen::VectorXd q = RandomConfiguration(model, rng);
    const KinematicState state = ForwardKinematics(model, q);
    const Jacobian6 j = GeometricJacobian(model, state);
    const Eigen::MatrixXd fd_pos = NumericJacobian(
        [&](const Eigen::VectorXd& x) -> Eigen::VectorXd {
          return ForwardKinematics(model, x).ee.position;
        },
        q);
    EXPECT_LT((j.topRows(3) - fd_pos).cwiseAbs().maxCoeff(), 1e-6);
    const lie::RotationSO3& r = state.ee.orientation;
    for (int i = 0; i < model.dof(); ++i) {
      Eigen::VectorXd qp = q;
      qp[i] += kStep;
      const Eigen::Vector3d fd =
          lie::Log(r.transpose() * ForwardKinematics(model, qp).ee.orientation) / kStep;
      EXPECT_LT((fd - r.transpose() * j.block<3, 1>(3, i)).norm(), 1e-5);
    }
  }
}

TEST_F(KinematicsTest, PlanarJacobianMatchesFiniteDifferences) {
  CheckJacobianAgainstFiniteDifferences(planar_, 1);
}

TEST_F(KinematicsTest, PandaJacobianMatchesFiniteDifferences) {
  CheckJacobianAgainstFiniteDifferences(panda_, 2);
}

TEST_F(KinematicsTest, PointJacobianMatchesFiniteDifferences) {
  std::mt19937_64 rng(3);
  const Eigen::Vector3d local(0.05, -0.02, 0.1);
  for (int link = 1; link <= panda_.dof(); ++link) {
    const Eigen::VectorXd q = RandomConfiguration(panda_, rng);
    const KinematicState state = ForwardKinematics(panda_, q);
    const Eigen::Matrix3Xd j =
        PointJacobian(panda_, state, link, state.link_frames[link] * local);
    const Eigen::MatrixXd fd = NumericJacobian(
        [&](const Eigen::VectorXd& x) -> Eigen::VectorXd {
          return ForwardKinematics(panda_, x).link_frames[link] * local;
        },
        q);
    EXPECT_LT((j - fd).cwiseAbs().maxCoeff(), 1e-8) << link;
  }
}

TEST_F(KinematicsTest, JacobianDerivativesMatchFiniteDifferences) {
  std::mt19937_64 rng(4);
  const Eigen::VectorXd q = RandomConfiguration(panda_, rng);
  const std::vector<Jacobian6> dj = JacobianDerivatives(panda_, ForwardKinematics(panda_, q));
  for (int i = 0; i < panda_.dof(); ++i) {
    Eigen::VectorXd qp = q;
    Eigen::VectorXd qm = q;
    qp[i] += 1e-6;
    qm[i] -= 1e-6;
    const Eigen::MatrixXd fd =
        (GeometricJacobian(panda_, qp) - GeometricJacobian(panda_, qm)) / 2e-6;
    EXPECT_LT((dj[i] - fd).cwiseAbs().maxCoeff(), 1e-8) << i;
  }
}

TEST_F(KinematicsTest, PlanarManipulabilityIsSineOfElbow) {
  EXPECT_EQ(Manipulability(planar_, Q2(0.4, 0.0)), 0.0);
  EXPECT_NEAR(Manipulability(planar_, Q2(0.4, kPi / 2)), 1.0, 1e-14);
  for (double q2 = -3.0; q2 <= 3.0; q2 += 0.25) {
    EXPECT_NEAR(Manipulability(planar_, Q2(0.1, q2)), std::abs(std::sin(q2)),
                1e-7);
  }
}

TEST_F(KinematicsTest, PlanarManipulabilityGradientAtMaximum) {
  for (GradientMode mode : {GradientMode::kFiniteDifference, GradientMode::kAnalytic}) {
    const Eigen::VectorXd g = ManipulabilityGradient(planar_, Q2(0.2, kPi / 2), mode);
    EXPECT_NEAR(g[1], 0.0, 1e-8);
    const Eigen::VectorXd above =
        ManipulabilityGradient(planar_, Q2(0.2, kPi / 2 + 0.3), mode);
    const Eigen::VectorXd below =
        ManipulabilityGradient(planar_, Q2(0.2, kPi / 2 - 0.3), mode);
    EXPECT_NEAR(above[1], -below[1], 1e-8);
  }
}

TEST_F(KinematicsTest, ManipulabilityGradientAtSingularityThrows) {
  EXPECT_THROW(ManipulabilityGradient(planar_, Q2(0.2, 0.0), GradientMode::kAnalytic),
               std::domain_error);
}

TEST_F(KinematicsTest, ManipulabilityIsNonNegativeAndBaseInvariant) {
  std::mt19937_64 rng(5);
  RobotModel moved = panda_;
  moved.base.linear() = lie::Exp(Eigen::Vector3d(0.3, -0.7, 1.1));
  moved.base.translation() = Eigen::Vector3d(0.5, -0.2, 0.1);
  for (int trial = 0; trial < 100; ++trial) {
    const Eigen::VectorXd q = RandomConfiguration(panda_, rng);
    const double mu = Manipulability(panda_, q);
    EXPECT_GE(mu, 0.0);
    EXPECT_NEAR(Manipulability(moved, q), mu, 1e-10);
  }
}

TEST_F(KinematicsTest, AnalyticManipulabilityGradientMatchesFiniteDifferences) {
  std::mt19937_64 rng(6);
  int checked = 0;
  while (checked < 100) {
    const Eigen::VectorXd q = RandomConfiguration(panda_, rng);
    if (Manipulability(panda_, q) < 1e-3) continue;
    const Eigen::VectorXd analytic = ManipulabilityGradient(panda_, q, GradientMode::kAnalytic);
    const Eigen::MatrixXd fd = NumericJacobian(
        [&](const Eigen::VectorXd& x) -> Eigen::VectorXd {
          return Eigen::VectorXd::Constant(1, Manipulability(panda_, x));
        },
        q);
    EXPECT_LT(RelativeError(analytic.transpose(), fd), 1e-4);
    ++checked;
  }
}

TEST_F(KinematicsTest, InverseKinematicsReachesForwardPose) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    const Eigen::VectorXd target_q = RandomConfiguration(panda_, rng, 0.3);
    const EePose target = ForwardKinematics(panda_, target_q).ee;
    Eigen::VectorXd seed = target_q;
    seed += 0.1 * Eigen::VectorXd::Ones(7);
    const Eigen::VectorXd q = SolveInverseKinematics(panda_, target, seed);
    const EePose reached = ForwardKinematics(panda_, q).ee;
    EXPECT_LT((reached.position - target.position).norm(), 1e-8);
    EXPECT_LT(lie::Log(target.orientation.transpose() * reached.orientation).norm(), 1e-8);
  }
}

TEST(RobotModelTest, RejectsMalformedFiles) {
  std::istringstream unknown("robot x\nbogus 1 2 3\n");
  EXPECT_THROW(ParseRobotModel(unknown), std::invalid_argument);
  std::istringstream bad_limits(
      "robot x\njoint a origin 0 0 0 0 0 0 axis 0 0 1 limits 1 -1 -2 2\n");
  EXPECT_THROW(ParseRobotModel(bad_limits), std::invalid_argument);
  EXPECT_THROW(LoadRobotModel("/nonexistent/robot.robot"), std::runtime_error);
}

TEST(RobotModelTest, IgnoredPairsAreSymmetric) {
  const RobotModel panda = LoadRobotModel(DataPath("panda.robot"));
  EXPECT_TRUE(panda.IsIgnoredPair(0, 2));
  EXPECT_TRUE(panda.IsIgnoredPair(2, 0));
  EXPECT_FALSE(panda.IsIgnoredPair(0, 3));
  EXPECT_EQ(panda.dof(), 7);
  EXPECT_EQ(panda.capsules.size(), 8u);
}

}  // namespace
}  // namespace rmpcc
