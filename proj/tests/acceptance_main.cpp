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

// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any hard
// criterion fails. Criterion 6 (timing) only warns.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "gradcheck.hpp"
#include "qp_oracle.hpp"
#include "rmpcc/distance_field.hpp"
#include "rmpcc/liegroup.hpp"
#include "rmpcc/metrics.hpp"
#include "rmpcc/ocp.hpp"
#include "rmpcc/qp_solver.hpp"
#include "rmpcc/scenario.hpp"
#include "rmpcc/simulator.hpp"
#include "rmpcc/trace.hpp"

namespace rmpcc {
namespace {

// Pinned tolerances.
constexpr double kGradTolerance = 1e-4;
constexpr int kGradStates = 200;
constexpr double kGradSeconds = 30.0;
constexpr double kRoundTripTolerance = 1e-9;
constexpr double kConjugationTolerance = 1e-12;
constexpr double kDecayRatio = 3.5;
constexpr double kMuFloor = 0.018 - 1e-4;
constexpr double kSelfFloor = 0.01 - 0.001;
constexpr double kEnvFloor = 0.01 - 0.001;
constexpr double kOrderingFactor = 2.0;
constexpr double kEcMeanCm = 0.5;
constexpr double kEoMean = 0.01;
constexpr double kTotalMs = 10.0;
constexpr double kQpPrimalTolerance = 1e-5;
constexpr double kKktTolerance = 1e-6;
constexpr double kDynamicsTolerance = 1e-14;

using Clock = std::chrono::steady_clock;

int failures = 0;
std::vector<std::pair<int, std::string>> lines;

void Report(int id, const char* name, bool pass, const std::string& detail, bool soft = false) {
  const char* tag = pass ? "PASS" : soft ? "WARN" : "FAIL";
  char line[1024];
  std::snprintf(line, sizeof(line), "[%s] criterion %d (%s): %s", tag, id, name, detail.c_str());
  std::printf("%s\n", line);
  std::fflush(stdout);
  lines.emplace_back(id, line);
  if (!pass && !soft) ++failures;
}

std::string Format(const char* fmt, auto... args) {
  char buffer[512];
  std::snprintf(buffer, sizeof(buffer), fmt, args...);
  return buffer;
}

double Seconds(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

TraceLog Simulate(const Scenario& scenario, bool timing) {
  SimulationOptions options;
  options.record_timing = timing;
  return RunClosedLoop(scenario, options);
}

std::string Csv(const TraceLog& trace) {
  std::ostringstream out;
  WriteTraceCsv(trace, out);
  return out.str();
}

double MaxKkt(const TraceLog& trace) {
  double worst = 0.0;
  for (const TraceRecord& r : trace.records) worst = std::max(worst, r.kkt);
  return worst;
}

void CheckJacobians() {
  const RobotModel panda = LoadRobotModel(std::string(RMPCC_DATA_DIR) + "/panda.robot");
  const auto start = Clock::now();
  // A few states land near singularities or closest-pair switches and are
  // skipped; draw enough that every quantity still sees 200 checked states.
  const tools::GradcheckReport report = tools::RunGradcheck(panda, 1, 260, kGradTolerance);
  const double elapsed = Seconds(start);
  double worst = 0.0;
  int fewest = 1 << 30;
  std::string worst_name;
  for (const tools::QuantityCheck& q : report.quantities) {
    if (q.worst > worst) {
      worst = q.worst;
      worst_name = q.name;
    }
    fewest = std::min(fewest, q.samples);
  }
  const bool pass = report.Passed() && fewest >= kGradStates && elapsed < kGradSeconds;
  Report(1, "jacobian suite", pass,
         Format("%zu quantities, worst rel %.2e on %s (tol %.0e), fewest checked states %d "
                "(need %d), %.2f s (limit %.0f s)",
                report.quantities.size(), worst, worst_name.c_str(), kGradTolerance, fewest,
                kGradStates, elapsed, kGradSeconds));
}

void CheckLieGroup() {
  std::mt19937_64 rng(2024);
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto rotvec = [&](double max_angle) {
    const Eigen::Vector3d axis = Eigen::Vector3d(normal(rng), normal(rng), normal(rng)).normalized();
    return Eigen::Vector3d(max_angle * unit(rng) * axis);
  };
  double roundtrip = 0.0;
  double conjugation = 0.0;
  double min_ratio = 1e300;
  for (int i = 0; i < 1000; ++i) {
    const Eigen::Vector3d phi = rotvec(M_PI - 0.1);
    roundtrip = std::max(roundtrip, (lie::Log(lie::Exp(phi)) - phi).norm());
    const Eigen::Matrix3d r = lie::Exp(rotvec(M_PI - 0.1));
    conjugation = std::max(
        conjugation, (lie::Exp(phi) * r - r * lie::Exp(r.transpose() * phi)).norm());
    const Eigen::Vector3d base = rotvec(2.5);
    const Eigen::Vector3d dir = rotvec(1.0).normalized();
    auto error = [&](double size) {
      const Eigen::Vector3d delta = size * dir;
      return (lie::Log(lie::Exp(base) * lie::Exp(delta)) -
              (base + lie::RightJacobianInverse(base) * delta))
          .norm();
    };
    min_ratio = std::min(min_ratio, error(1e-2) / error(5e-3));
  }
  const bool pass = roundtrip < kRoundTripTolerance && conjugation < kConjugationTolerance &&
                    min_ratio >= kDecayRatio;
  Report(2, "lie group", pass,
         Format("exp/log roundtrip %.2e (tol %.0e), conjugation %.2e (tol %.0e), "
                "min first-order decay ratio %.3f (need %.1f), 1000 samples",
                roundtrip, kRoundTripTolerance, conjugation, kConjugationTolerance, min_ratio,
                kDecayRatio));
}

struct SafetyMinima {
  double mu = 1e300;
  double self = 1e300;
  double env = 1e300;
  int violations = 0;
};

SafetyMinima Safety(const TraceLog& trace) {
  SafetyMinima m;
  for (const TraceRecord& r : trace.records) {
    m.mu = std::min(m.mu, r.mu);
    m.self = std::min(m.self, r.dself);
    m.env = std::min(m.env, r.denv);
    if (r.mu < kMuFloor || r.dself < kSelfFloor || r.denv < kEnvFloor) ++m.violations;
  }
  return m;
}

void CheckSafetyAndOrdering(const TraceLog& rmpcc, const TraceLog& tt) {
  const SafetyMinima a = Safety(rmpcc);
  const SafetyMinima b = Safety(tt);
  Report(3, "safety invariance", a.violations == 0 && b.violations == 0,
         Format("rmpcc min mu/d_self/d_env %.4f/%.4f/%.5f, tt_mpc %.4f/%.4f/%.5f; floors "
                "%.4f/%.3f/%.3f; violating ticks %d + %d",
                a.mu, a.self, a.env, b.mu, b.self, b.env, kMuFloor, kSelfFloor, kEnvFloor,
                a.violations, b.violations));

  const MetricsReport ma = ComputeMetrics(rmpcc);
  const MetricsReport mb = ComputeMetrics(tt);
  struct Entry {
    const char* name;
    double rmpcc;
    double tt;
  };
  const Entry entries[] = {{"max e_c", ma.ec_max_cm, mb.ec_max_cm},
                           {"mean e_c", ma.ec_mean_cm, mb.ec_mean_cm},
                           {"max e_o", ma.eo_max, mb.eo_max},
                           {"max dv_ee", ma.ax_max, mb.ax_max}};
  bool pass = true;
  std::string detail;
  for (const Entry& e : entries) {
    const double factor = e.tt / e.rmpcc;
    pass = pass && factor >= kOrderingFactor;
    detail += Format("%s %.4g vs %.4g (x%.1f); ", e.name, e.rmpcc, e.tt, factor);
  }
  detail += Format("need x%.0f", kOrderingFactor);
  Report(4, "comparative ordering", pass, detail);
}

void CheckTracking(const TraceLog& lemniscate) {
  const MetricsReport m = ComputeMetrics(lemniscate);
  Report(5, "unobstructed tracking", m.ec_mean_cm < kEcMeanCm && m.eo_mean < kEoMean,
         Format("mean e_c %.4f cm (limit %.1f), mean e_o %.2e rad (limit %.2f), s %.3f -> %.3f",
                m.ec_mean_cm, kEcMeanCm, m.eo_mean, kEoMean, m.s_initial, m.s_final));
}

void CheckTiming(const TraceLog& lemniscate, const SimulationSetup& setup) {
  const MetricsReport m = ComputeMetrics(lemniscate);
  std::printf("    %-16s %10s %10s %10s\n", "phase [ms]", "min", "max", "mean");
  auto row = [](const char* name, const TimingStats& s) {
    std::printf("    %-16s %10.3f %10.3f %10.3f\n", name, s.min, s.max, s.mean);
  };
  row("distance", m.t_dist);
  row("linearization", m.t_lin);
  row("solving OCP", m.t_qp);
  row("total", m.t_total);
  const int links = CountEnvLinks(*setup.model);
  Report(6, "timing (soft)", m.t_total.mean < kTotalMs,
         Format("mean total %.3f ms (target %.0f ms) at N=%d, n=%d, %d env links", m.t_total.mean,
                kTotalMs, setup.config.horizon, setup.model->dof(), links),
         /*soft=*/true);
}

void CheckQp(const std::vector<const TraceLog*>& runs) {
  std::mt19937_64 rng(7);
  QpSolver solver;
  double worst_primal = 0.0;
  double worst_kkt = 0.0;
  int bad = 0;
  for (int trial = 0; trial < 50; ++trial) {
    Eigen::VectorXd interior;
    const QpProblem qp = testing::RandomQp(rng, &interior);
    const Eigen::VectorXd oracle = testing::EnumerateActiveSets(qp);
    const QpSolution s = solver.Solve(qp);
    if (oracle.size() == 0 || s.status != QpStatus::kOptimal) {
      ++bad;
      continue;
    }
    worst_primal = std::max(worst_primal, (s.primal - oracle).cwiseAbs().maxCoeff());
    worst_kkt = std::max({worst_kkt, s.residuals.primal, s.residuals.dual,
                          s.residuals.complementarity});
  }
  double closed_loop_kkt = 0.0;
  std::size_t ticks = 0;
  for (const TraceLog* run : runs) {
    closed_loop_kkt = std::max(closed_loop_kkt, MaxKkt(*run));
    ticks += run->records.size();
  }
  const bool pass = bad == 0 && worst_primal < kQpPrimalTolerance && worst_kkt <= kKktTolerance &&
                    closed_loop_kkt <= kKktTolerance;
  Report(7, "qp oracle equivalence", pass,
         Format("50 random QPs: worst primal gap %.2e (tol %.0e), worst KKT %.2e, %d unsolved; "
                "closed-loop worst KKT %.2e over %zu ticks (tol %.0e)",
                worst_primal, kQpPrimalTolerance, worst_kkt, bad, closed_loop_kkt, ticks,
                kKktTolerance));
}

void CheckDynamics() {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  const double dt = 0.01;
  double closed_form = 0.0;
  double composition = 0.0;
  double superposition = 0.0;
  auto random_state = [&] {
    OcpState x;
    x.q = Eigen::VectorXd::NullaryExpr(7, [&] { return d(rng); });
    x.s = d(rng);
    x.v_s = d(rng);
    return x;
  };
  auto random_input = [&] {
    OcpInput u;
    u.qd = Eigen::VectorXd::NullaryExpr(7, [&] { return d(rng); });
    u.vd_s = d(rng);
    return u;
  };
  for (int i = 0; i < 1000; ++i) {
    const OcpState x = random_state();
    const OcpInput a = random_input();
    const OcpInput b = random_input();
    const OcpState next = DiscreteDynamics(x, a, dt);
    Eigen::VectorXd expected(9);
    expected << x.q + dt * a.qd, x.s + dt * x.v_s + 0.5 * dt * dt * a.vd_s, x.v_s + dt * a.vd_s;
    closed_form = std::max(closed_form, (StackState(next) - expected).cwiseAbs().maxCoeff());
    const OcpState halves = DiscreteDynamics(DiscreteDynamics(x, a, dt / 2), a, dt / 2);
    composition =
        std::max(composition, (StackState(next) - StackState(halves)).cwiseAbs().maxCoeff());
    OcpInput sum;
    sum.qd = a.qd + b.qd;
    sum.vd_s = a.vd_s + b.vd_s;
    OcpInput zero;
    zero.qd = Eigen::VectorXd::Zero(7);
    const Eigen::VectorXd lhs =
        StackState(DiscreteDynamics(x, sum, dt)) + StackState(DiscreteDynamics(x, zero, dt));
    const Eigen::VectorXd rhs = StackState(next) + StackState(DiscreteDynamics(x, b, dt));
    superposition = std::max(superposition, (lhs - rhs).cwiseAbs().maxCoeff());
  }
  const bool pass = closed_form <= kDynamicsTolerance && composition <= kDynamicsTolerance &&
                    superposition <= kDynamicsTolerance;
  Report(8, "dynamics exactness", pass,
         Format("closed form %.1e, composition %.1e, superposition %.1e over 1000 samples "
                "(tol %.0e)",
                closed_form, composition, superposition, kDynamicsTolerance));
}

int Main() {
  const std::string data = RMPCC_DATA_DIR;
  CheckJacobians();
  CheckLieGroup();
  CheckDynamics();

  const Scenario obstacle = LoadScenario(data + "/lemniscate_obstacle.toml");
  Scenario obstacle_tt = obstacle;
  obstacle_tt.controller = ControllerKind::kTtMpc;
  const Scenario lemniscate = LoadScenario(data + "/lemniscate.toml");

  // The timed run is the obstacle scenario, where every env link adds a row.
  const SimulationSetup setup = PrepareSimulation(obstacle);
  auto start = Clock::now();
  const TraceLog rmpcc_run = RunClosedLoop(obstacle, setup, SimulationOptions{true});
  const TraceLog tt_run = Simulate(obstacle_tt, false);
  std::printf("    obstacle runs: %.1f s\n", Seconds(start));
  CheckSafetyAndOrdering(rmpcc_run, tt_run);
  CheckTiming(rmpcc_run, setup);

  start = Clock::now();
  const TraceLog lemniscate_run = Simulate(lemniscate, false);
  const TraceLog repeat = Simulate(lemniscate, false);
  std::printf("    lemniscate runs: %.1f s\n", Seconds(start));
  CheckTracking(lemniscate_run);
  CheckQp({&rmpcc_run, &tt_run, &lemniscate_run});

  const std::string first = Csv(lemniscate_run);
  const std::string second = Csv(repeat);
  Report(9, "determinism", first == second,
         Format("repeated %s run: %zu vs %zu bytes, %s", lemniscate.name.c_str(), first.size(),
                second.size(), first == second ? "identical" : "different"));

  std::printf("\nsummary\n");
  std::sort(lines.begin(), lines.end());
  for (const auto& [id, line] : lines) std::printf("%s\n", line.c_str());
  std::printf("%s\n", failures == 0 ? "all hard criteria pass" : "some criteria FAILED");
  return failures == 0 ? 0 : 1;
}

}  // namespace
}  // namespace rmpcc

int main() {
  try {
    return rmpcc::Main();
  } catch (const std::exception& e) {
    std::fprintf(stderr, "acceptance aborted: %s\n", e.what());
    return 3;
  }
}
