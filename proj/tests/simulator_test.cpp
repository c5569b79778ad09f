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

#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>

#include <gtest/gtest.h>

#include "rmpcc/config.hpp"
#include "rmpcc/kinematics.hpp"
#include "rmpcc/metrics.hpp"
#include "rmpcc/scenario.hpp"
#include "rmpcc/simulator.hpp"
#include "rmpcc/trace.hpp"
#include "test_util.hpp"

namespace rmpcc {
namespace {

using ::rmpcc::testing::DataPath;
using ::rmpcc::testing::FixturePath;

namespace fs = std::filesystem;

class TempDir {
 public:
  TempDir() {
    static std::atomic<int> counter{0};
    path_ = fs::temp_directory_path() /
            ("rmpcc_sim_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  std::string Write(const std::string& name, const std::string& content) const {
    const fs::path p = path_ / name;
    std::ofstream(p) << content;
    return p.string();
  }

 private:
  fs::path path_;
};

Scenario StraightLine(double duration) {
  Scenario s;
  s.name = "line";
  s.robot_path = DataPath("panda.robot");
  s.ocp_path = DataPath("ocp.toml");
  s.duration = duration;
  s.ik_seed = (Eigen::VectorXd(7) << 0.0, -0.785, 0.0, -2.356, 0.0, 1.571, 0.785).finished();
  s.via_points = LineViaPoints(Eigen::Vector3d(0.45, -0.2, 0.45), Eigen::Vector3d(0.45, 0.2, 0.45),
                               5, LemniscateOptions().facing);
  return s;
}

TraceLog Simulate(const Scenario& scenario) {
  SimulationOptions options;
  options.record_timing = false;
  return RunClosedLoop(scenario, options);
}

void ExpectSameTrace(const TraceLog& a, const TraceLog& b) {
  std::ostringstream sa, sb;
  WriteTraceCsv(a, sa);
  WriteTraceCsv(b, sb);
  EXPECT_EQ(sa.str(), sb.str());
}

TEST(LemniscateTest, FirstPointIsTheCenter) {
  LemniscateOptions options;
  options.facing = lie::RotationSO3::Identity();
  options.tilt = 0.0;
  const std::vector<ViaPoint> via = LemniscateViaPoints(0.3, 8, options);
  ASSERT_EQ(via.size(), 8u);
  EXPECT_LT((via.front().position - options.center).norm(), 1e-15);
  EXPECT_LT((via.front().orientation - Eigen::Matrix3d::Identity()).norm(), 1e-15);
  EXPECT_EQ(via.front().s, 0.0);
  EXPECT_EQ(via.back().s, 1.0);
}

TEST(LemniscateTest, ClosesOnItself) {
  const PathSpline path(LemniscateViaPoints(0.3, 33));
  EXPECT_LT((path.SamplePosition(0.0).p - path.SamplePosition(1.0).p).norm(), 1e-9);
  const Eigen::Matrix3d r0 = path.SampleOrientation(0.0).rotation;
  const Eigen::Matrix3d r1 = path.SampleOrientation(1.0).rotation;
  EXPECT_LT((r0 - r1).norm(), 1e-9);
}

TEST(LemniscateTest, StaysInsidePandaReach) {
  const PathSpline path(LemniscateViaPoints(0.3, 33));
  for (int i = 0; i <= 1000; ++i) {
    EXPECT_LT(path.SamplePosition(i / 1000.0).p.norm(), 0.855);
  }
}

TEST(LemniscateTest, RejectsBadArguments) {
  EXPECT_THROW(LemniscateViaPoints(0.3, 7), std::invalid_argument);
  EXPECT_THROW(LemniscateViaPoints(0.0, 33), std::invalid_argument);
  EXPECT_THROW(LineViaPoints(Eigen::Vector3d::Zero(), Eigen::Vector3d::UnitX(), 1,
                             lie::RotationSO3::Identity()),
               std::invalid_argument);
}

TEST(ObstacleTrackTest, InterpolatesAndHolds) {
  ObstacleTrack track;
  track.radius = 0.1;
  track.keyframes = {{1.0, Eigen::Vector3d(0, 0, 0)}, {3.0, Eigen::Vector3d(2, 0, 0)}};
  EXPECT_EQ(track.CenterAt(0.0), Eigen::Vector3d(0, 0, 0));
  EXPECT_LT((track.CenterAt(2.0) - Eigen::Vector3d(1, 0, 0)).norm(), 1e-15);
  EXPECT_EQ(track.CenterAt(10.0), Eigen::Vector3d(2, 0, 0));
  track.keyframes = {{3.0, Eigen::Vector3d::Zero()}, {1.0, Eigen::Vector3d::Zero()}};
  EXPECT_THROW(track.Validate(), std::invalid_argument);
}

TEST(ScenarioIoTest, LoadsShippedScenarios) {
  for (const char* name : {"lemniscate.toml", "straight_line.toml", "lemniscate_obstacle.toml", "via_file.toml"}) {
    const Scenario s = LoadScenario(DataPath(name));
    EXPECT_TRUE(fs::exists(s.robot_path)) << name;
    EXPECT_GE(s.via_points.size(), 2u) << name;
  }
  const Scenario obstacle = LoadScenario(DataPath("lemniscate_obstacle.toml"));
  ASSERT_TRUE(obstacle.obstacle.has_value());
  EXPECT_EQ(obstacle.obstacle->radius, 0.16);
  EXPECT_EQ(obstacle.num_ticks(), 3201);
}

TEST(ScenarioIoTest, RejectsMalformedFiles) {
  const TempDir dir;
  const std::string robot = DataPath("panda.robot");
  const std::string head = "[scenario]\nrobot = \"" + robot + "\"\nduration = 1.0\nq0 = [0,0,0,0,0,0,0]\n";
  EXPECT_THROW(LoadScenario(dir.Write("a.toml", head + "[path]\ntype = \"spiral\"\n")),
               std::invalid_argument);
  EXPECT_THROW(LoadScenario(dir.Write("b.toml", head + "colour = 3\n[path]\ntype = \"line\"\n"
                                                       "start = [0,0,0]\nend = [1,0,0]\n")),
               std::invalid_argument);
  EXPECT_THROW(LoadScenario(dir.Write("c.toml", head + "[path]\ntype = \"line\"\nstart = [0,0]\n"
                                                       "end = [1,0,0]\n")),
               std::invalid_argument);
  EXPECT_THROW(LoadScenario(dir.Write("d.toml", head + "[path]\ntype = \"lemniscate\"\nscale = 0.3\n"
                                                       "points = 9\n[obstacle]\nradius = 0.1\n"
                                                       "track = [[0, 1, 2]]\n")),
               std::invalid_argument);
  EXPECT_ANY_THROW(LoadScenario(dir.Write("e.toml", "[scenario\nrobot = 1\n")));
  EXPECT_ANY_THROW(LoadScenario((fs::temp_directory_path() / "no_such_scenario.toml").string()));
}

TEST(ScenarioIoTest, ViaPointFile) {
  const TempDir dir;
  const std::vector<ViaPoint> via = LoadViaPoints(
      dir.Write("v.txt", "# px py pz qw qx qy qz\n0 0 0 1 0 0 0\n\n1 0 0 0 1 0 0\n2 0 0 0 1 0 0\n"));
  ASSERT_EQ(via.size(), 3u);
  EXPECT_EQ(via[1].s, 0.5);
  EXPECT_LT((via[1].orientation - Eigen::Vector3d(1, -1, -1).asDiagonal().toDenseMatrix()).norm(),
            1e-15);
  EXPECT_THROW(LoadViaPoints(dir.Write("w.txt", "0 0 0 1 0 0\n")), std::invalid_argument);
  EXPECT_THROW(LoadViaPoints(dir.Write("x.txt", "0 0 0 2 0 0 0\n")), std::invalid_argument);
}

TEST(ConfigIoTest, LoadsShippedConfig) {
  const OcpConfig config = LoadOcpConfig(DataPath("ocp.toml"));
  EXPECT_NO_THROW(config.Validate());
  EXPECT_GT(config.horizon, 1);
  EXPECT_TRUE(config.barriers.secant_rate);
}

TEST(ConfigIoTest, RejectsUnknownKeysAndBadTypes) {
  std::istringstream unknown("[weights]\nw_typo = 1.0\n");
  EXPECT_THROW(OcpConfigFromTable(ConfigTable::Parse(unknown, "unknown"), "."),
               std::invalid_argument);
  std::istringstream text("[ocp]\nhorizon = \"ten\"\n");
  EXPECT_ANY_THROW(OcpConfigFromTable(ConfigTable::Parse(text, "text"), "."));
  std::istringstream flags("[barriers]\nsecant_rate = false\n");
  EXPECT_FALSE(OcpConfigFromTable(ConfigTable::Parse(flags, "flags"), ".").barriers.secant_rate);
}

TEST(TraceIoTest, CsvRoundTripsExactly) {
  TraceLog log;
  log.dof = 2;
  log.dt = 0.01;
  for (int k = 0; k < 3; ++k) {
    TraceRecord r;
    r.t = 0.01 * k;
    r.q = Eigen::Vector2d(0.1 * k, 1.0 / 3.0);
    r.qd = Eigen::Vector2d(-1e-17, 2.5);
    r.s = 0.125 * k;
    r.ec = 1.0 / 7.0;
    r.denv = std::numeric_limits<double>::infinity();
    r.status = k == 1 ? "infeasible_qp" : "optimal";
    r.t_total = 1.25;
    log.records.push_back(r);
  }
  std::stringstream csv;
  WriteTraceCsv(log, csv);
  const TraceLog back = ReadTraceCsv(csv);
  ASSERT_EQ(back.records.size(), 3u);
  EXPECT_EQ(back.dof, 2);
  EXPECT_NEAR(back.dt, 0.01, 1e-15);
  ExpectSameTrace(log, back);
  EXPECT_TRUE(std::isinf(back.records[2].denv));
  EXPECT_EQ(back.records[1].status, "infeasible_qp");
}

TEST(TraceIoTest, RejectsMalformedCsv) {
  std::istringstream bad_header("time,q1\n0,1\n");
  EXPECT_THROW(ReadTraceCsv(bad_header), std::invalid_argument);
  std::ostringstream good;
  TraceLog log;
  log.dof = 1;
  log.dt = 0.01;
  TraceRecord r;
  r.q = r.qd = Eigen::VectorXd::Zero(1);
  r.status = "optimal";
  log.records.push_back(r);
  WriteTraceCsv(log, good);
  std::string text = good.str();
  std::istringstream short_row(text.substr(0, text.rfind(',')) + "\n");
  EXPECT_THROW(ReadTraceCsv(short_row), std::invalid_argument);
  std::string garbled = text;
  garbled.replace(garbled.find("\n0,") + 1, 1, "x");
  std::istringstream not_a_number(garbled);
  EXPECT_THROW(ReadTraceCsv(not_a_number), std::invalid_argument);
}

TraceLog PlanarTrace(const std::vector<Eigen::Vector2d>& qd) {
  TraceLog log;
  log.dof = 2;
  log.dt = 0.01;
  for (size_t k = 0; k < qd.size(); ++k) {
    TraceRecord r;
    r.t = 0.01 * k;
    r.q = Eigen::Vector2d(0.0, 1.0);
    r.qd = qd[k];
    r.status = "optimal";
    log.records.push_back(r);
  }
  return log;
}

TEST(MetricsTest, ConstantVelocityHasNoAcceleration) {
  const RobotModel planar = LoadRobotModel(DataPath("planar2.robot"));
  TraceLog log = PlanarTrace(std::vector<Eigen::Vector2d>(5, Eigen::Vector2d(0.3, -0.2)));
  FillEeAcceleration(planar, &log);
  for (const TraceRecord& r : log.records) EXPECT_EQ(r.ax, 0.0);
  EXPECT_EQ(ComputeMetrics(log).ax_max, 0.0);
}

TEST(MetricsTest, SingleJumpGivesJumpOverDt) {
  const RobotModel planar = LoadRobotModel(DataPath("planar2.robot"));
  TraceLog log = PlanarTrace({Eigen::Vector2d::Zero(), Eigen::Vector2d::Zero(),
                              Eigen::Vector2d(0.5, 0.0), Eigen::Vector2d(0.5, 0.0)});
  FillEeAcceleration(planar, &log);
  const double jump = (GeometricJacobian(planar, log.records[2].q).topRows(3) * log.records[2].qd).norm();
  EXPECT_EQ(log.records[1].ax, 0.0);
  EXPECT_NEAR(log.records[2].ax, jump / 0.01, 1e-12);
  EXPECT_EQ(log.records[3].ax, 0.0);
  const MetricsReport m = ComputeMetrics(log);
  EXPECT_NEAR(m.ax_max, jump / 0.01, 1e-12);
  EXPECT_NEAR(m.ax_mean, jump / 0.04, 1e-12);
}

TEST(MetricsTest, CountsStatusesAndRoundTrips) {
  TraceLog log = PlanarTrace(std::vector<Eigen::Vector2d>(4, Eigen::Vector2d::Zero()));
  log.records[1].status = "infeasible_qp";
  log.records[2].status = "max_iter";
  log.records[3].s = 0.25;
  log.records[0].ec = 0.02;
  const MetricsReport m = ComputeMetrics(log);
  EXPECT_EQ(m.ticks, 4);
  EXPECT_EQ(m.infeasible_ticks, 1);
  EXPECT_EQ(m.max_iter_ticks, 1);
  EXPECT_EQ(m.s_final, 0.25);
  EXPECT_NEAR(m.ec_max_cm, 2.0, 1e-15);
  std::stringstream text;
  WriteMetrics(m, text);
  const std::map<std::string, double> back = ReadMetricsMap(text);
  EXPECT_EQ(back.at("ticks"), 4.0);
  EXPECT_EQ(back.at("ec_max_cm"), m.ec_max_cm);
  EXPECT_EQ(back.at("s_final"), 0.25);
}

TEST(GoldenTraceTest, ShortRunMatchesFrozenTrace) {
  const TraceLog trace = Simulate(LoadScenario(FixturePath("golden_line.toml")));
  const TraceLog golden = LoadTraceCsv(FixturePath("golden_line_trace.csv"));
  ASSERT_EQ(trace.records.size(), golden.records.size());
  for (size_t k = 0; k < golden.records.size(); ++k) {
    const TraceRecord& a = trace.records[k];
    const TraceRecord& b = golden.records[k];
    EXPECT_LT((a.q - b.q).cwiseAbs().maxCoeff(), 1e-9) << k;
    EXPECT_LT((a.qd - b.qd).cwiseAbs().maxCoeff(), 1e-9) << k;
    EXPECT_NEAR(a.s, b.s, 1e-9) << k;
    EXPECT_NEAR(a.vs, b.vs, 1e-9) << k;
    EXPECT_NEAR(a.ec, b.ec, 1e-9) << k;
    EXPECT_NEAR(a.mu, b.mu, 1e-9) << k;
    EXPECT_EQ(a.status, b.status) << k;
  }
  std::ifstream metrics_file(FixturePath("golden_line_metrics.txt"));
  const std::map<std::string, double> golden_metrics = ReadMetricsMap(metrics_file);
  const MetricsReport m = ComputeMetrics(trace);
  EXPECT_NEAR(m.ec_max_cm, golden_metrics.at("ec_max_cm"), 1e-7);
  EXPECT_NEAR(m.ax_max, golden_metrics.at("ax_max"), 1e-7);
  EXPECT_NEAR(m.s_final, golden_metrics.at("s_final"), 1e-9);
}

TEST(ClosedLoopTest, TraceShapeAndInitialState) {
  const Scenario scenario = StraightLine(0.2);
  const TraceLog trace = Simulate(scenario);
  ASSERT_EQ(trace.records.size(), 21u);
  EXPECT_EQ(trace.dof, 7);
  EXPECT_EQ(trace.records.front().t, 0.0);
  EXPECT_EQ(trace.records.front().s, 0.0);
  EXPECT_EQ(trace.records.front().ax, 0.0);
  const SimulationSetup setup = PrepareSimulation(scenario);
  EXPECT_EQ(trace.records.front().q, setup.q0);
  for (const TraceRecord& r : trace.records) {
    EXPECT_EQ(r.t_total, 0.0);
    EXPECT_TRUE(std::isinf(r.denv));
  }
}

TEST(ClosedLoopTest, StraightLineReachesTheEnd) {
  const TraceLog trace = Simulate(StraightLine(24.0));
  const MetricsReport m = ComputeMetrics(trace);
  EXPECT_GE(m.s_final, 0.95);
  EXPECT_EQ(m.infeasible_ticks, 0);
  EXPECT_LT(m.ec_max_cm, 1.0);
}

TEST(ClosedLoopTest, FarObstacleChangesNothing) {
  const Scenario plain = StraightLine(1.0);
  Scenario far = plain;
  ObstacleTrack track;
  track.radius = 0.1;
  track.keyframes = {{0.0, Eigen::Vector3d(50.0, 0.0, 0.0)}};
  far.obstacle = track;
  const TraceLog a = Simulate(plain);
  TraceLog b = Simulate(far);
  ASSERT_EQ(a.records.size(), b.records.size());
  // The clearance column is the only one that may differ.
  for (size_t k = 0; k < a.records.size(); ++k) {
    EXPECT_GT(b.records[k].denv, 40.0);
    b.records[k].denv = a.records[k].denv;
  }
  ExpectSameTrace(a, b);
}

TEST(ClosedLoopTest, TrackingAndContouringAgreeOnAStraightLine) {
  Scenario rmpcc = StraightLine(8.0);
  Scenario tt = rmpcc;
  tt.controller = ControllerKind::kTtMpc;
  const MetricsReport a = ComputeMetrics(Simulate(rmpcc));
  const MetricsReport b = ComputeMetrics(Simulate(tt));
  EXPECT_LT(std::abs(a.ec_mean_cm - b.ec_mean_cm), 0.5);
}

TEST(ClosedLoopTest, RepeatedRunsAreIdentical) {
  Scenario scenario = StraightLine(0.5);
  scenario.joint_noise = 1e-4;
  scenario.seed = 42;
  ExpectSameTrace(Simulate(scenario), Simulate(scenario));
  Scenario other = scenario;
  other.seed = 43;
  std::ostringstream sa, sb;
  WriteTraceCsv(Simulate(scenario), sa);
  WriteTraceCsv(Simulate(other), sb);
  EXPECT_NE(sa.str(), sb.str());
}

TEST(ClosedLoopTest, RejectsDegenerateInputs) {
  Scenario zero_length = StraightLine(1.0);
  zero_length.via_points = LineViaPoints(Eigen::Vector3d(0.45, 0, 0.45), Eigen::Vector3d(0.45, 0, 0.45),
                                         2, LemniscateOptions().facing);
  EXPECT_THROW(PrepareSimulation(zero_length), std::invalid_argument);
  Scenario bad_dt = StraightLine(1.0);
  bad_dt.dt = 0.03;
  EXPECT_THROW(bad_dt.Validate(), std::invalid_argument);
  Scenario no_start = StraightLine(1.0);
  no_start.ik_seed.resize(0);
  EXPECT_THROW(no_start.Validate(), std::invalid_argument);
}

}  // namespace
}  // namespace rmpcc
