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

#include "commands.hpp"

#include <cmath>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>
#include <stdexcept>
#include <vector>

#include <Eigen/Geometry>

#include "gradcheck.hpp"
#include "rmpcc/metrics.hpp"
#include "rmpcc/path_spline.hpp"
#include "rmpcc/robot_model.hpp"
#include "rmpcc/scenario.hpp"
#include "rmpcc/simulator.hpp"
#include "rmpcc/trace.hpp"
#include "svg_plot.hpp"

namespace rmpcc::tools {
namespace {

namespace fs = std::filesystem;

std::vector<double> Column(const TraceLog& trace, double TraceRecord::*field) {
  std::vector<double> v;
  v.reserve(trace.records.size());
  for (const TraceRecord& r : trace.records) v.push_back(r.*field);
  return v;
}

void WritePlots(const TraceLog& trace, const Scenario& scenario, const OcpConfig& config,
                const fs::path& dir) {
  const std::vector<double> t = Column(trace, &TraceRecord::t);
  const std::string name = scenario.name + " (" + ControllerName(scenario.controller) + ")";

  SvgFigure safety("Safety measures: " + name, t, "t [s]");
  safety.AddPanel({"manipulability", "mu", {{"mu", "#1f77b4", Column(trace, &TraceRecord::mu)}},
                   {config.barriers.eps_sing}});
  safety.AddPanel({"self distance",
                   "d_self [m]",
                   {{"d_self", "#2ca02c", Column(trace, &TraceRecord::dself)}},
                   {config.barriers.eps_self}});
  if (scenario.obstacle) {
    safety.AddPanel({"obstacle clearance",
                     "d_env [m]",
                     {{"d_env", "#d62728", Column(trace, &TraceRecord::denv)}},
                     {config.barriers.eps_env}});
  }
  safety.Save((dir / "safety.svg").string());

  std::vector<double> ec_cm = Column(trace, &TraceRecord::ec);
  for (double& v : ec_cm) v *= 100.0;
  SvgFigure progress("Path progress and errors: " + name, t, "t [s]");
  progress.AddPanel({"path parameter", "s", {{"s", "#1f77b4", Column(trace, &TraceRecord::s)}}, {}});
  progress.AddPanel({"path velocity and acceleration",
                     "1/s, 1/s^2",
                     {{"v_s", "#ff7f0e", Column(trace, &TraceRecord::vs)},
                      {"dv_s", "#9467bd", Column(trace, &TraceRecord::vds)}},
                     {}});
  progress.AddPanel({"tracking errors",
                     "cm / rad",
                     {{"e_c [cm]", "#2ca02c", ec_cm},
                      {"e_o [rad]", "#d62728", Column(trace, &TraceRecord::eo)}},
                     {}});
  progress.Save((dir / "progress.svg").string());
}

void PrintTiming(const MetricsReport& m, std::ostream& out) {
  out << std::left << std::setw(16) << "phase" << std::right << std::setw(10) << "min [ms]"
      << std::setw(10) << "max [ms]" << std::setw(11) << "mean [ms]" << "\n";
  auto row = [&](const char* name, const TimingStats& s) {
    out << std::left << std::setw(16) << name << std::right << std::fixed << std::setprecision(3)
        << std::setw(10) << s.min << std::setw(10) << s.max << std::setw(11) << s.mean
        << std::defaultfloat << "\n";
  };
  row("distance", m.t_dist);
  row("linearization", m.t_lin);
  row("solving OCP", m.t_qp);
  row("total", m.t_total);
}

}  // namespace

int CmdRun(const RunOptions& options, std::ostream& out, std::ostream& err) {
  Scenario scenario;
  SimulationSetup setup;
  try {
    scenario = LoadScenario(options.scenario_path);
    if (!options.robot_path.empty()) scenario.robot_path = options.robot_path;
    if (!options.ocp_path.empty()) scenario.ocp_path = options.ocp_path;
    if (options.controller) scenario.controller = ParseControllerKind(*options.controller);
    setup = PrepareSimulation(scenario);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  }

  TraceLog trace;
  try {
    SimulationOptions sim;
    sim.record_timing = options.record_timing;
    trace = RunClosedLoop(scenario, setup, sim);
  } catch (const SimulationAbort& e) {
    err << "aborted: " << e.what() << "\n";
    return kExitAborted;
  }

  try {
    const fs::path dir(options.output_dir);
    fs::create_directories(dir);
    SaveTraceCsv(trace, (dir / "trace.csv").string());
    const MetricsReport metrics = ComputeMetrics(trace);
    {
      std::ofstream file(dir / "metrics.txt");
      if (!file) throw std::runtime_error("cannot write " + (dir / "metrics.txt").string());
      WriteMetrics(metrics, file);
    }
    if (options.plots) WritePlots(trace, scenario, setup.config, dir);

    out << scenario.name << " / " << ControllerName(scenario.controller) << ": "
        << metrics.ticks << " ticks, s " << metrics.s_initial << " -> " << metrics.s_final
        << "\n";
    out << "  e_c max/mean [cm]: " << metrics.ec_max_cm << " / " << metrics.ec_mean_cm << "\n";
    out << "  e_o max/mean [rad]: " << metrics.eo_max << " / " << metrics.eo_mean << "\n";
    out << "  ee accel max/mean [m/s^2]: " << metrics.ax_max << " / " << metrics.ax_mean << "\n";
    out << "  min mu / d_self / d_env: " << metrics.mu_min << " / " << metrics.dself_min << " / "
        << metrics.denv_min << "\n";
    if (metrics.infeasible_ticks > 0 || metrics.max_iter_ticks > 0) {
      out << "  infeasible QP ticks: " << metrics.infeasible_ticks
          << ", iteration-limited ticks: " << metrics.max_iter_ticks << "\n";
    }
    if (options.record_timing) PrintTiming(metrics, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  }
  return kExitOk;
}

int CmdCompare(const std::string& trace_a, const std::string& trace_b, std::ostream& out,
               std::ostream& err) {
  MetricsReport a;
  MetricsReport b;
  try {
    const TraceLog log_a = LoadTraceCsv(trace_a);
    const TraceLog log_b = LoadTraceCsv(trace_b);
    if (log_a.dof != log_b.dof) {
      throw std::invalid_argument("traces have different joint counts (" +
                                  std::to_string(log_a.dof) + " vs " +
                                  std::to_string(log_b.dof) + ")");
    }
    a = ComputeMetrics(log_a);
    b = ComputeMetrics(log_b);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  }
  const std::string name_a = fs::path(trace_a).parent_path().filename().string().empty()
                                 ? fs::path(trace_a).stem().string()
                                 : fs::path(trace_a).parent_path().filename().string();
  const std::string name_b = fs::path(trace_b).parent_path().filename().string().empty()
                                 ? fs::path(trace_b).stem().string()
                                 : fs::path(trace_b).parent_path().filename().string();
  out << std::left << std::setw(26) << "metric" << std::right << std::setw(14)
      << name_a.substr(0, 13) << std::setw(14) << name_b.substr(0, 13) << std::setw(14)
      << "B - A" << "\n";
  auto row = [&](const char* label, double va, double vb) {
    out << std::left << std::setw(26) << label << std::right << std::setprecision(4)
        << std::setw(14) << va << std::setw(14) << vb << std::setw(14) << vb - va << "\n";
  };
  row("max(dv_ee) [m/s^2]", a.ax_max, b.ax_max);
  row("mean(dv_ee) [m/s^2]", a.ax_mean, b.ax_mean);
  row("max(e_c) [cm]", a.ec_max_cm, b.ec_max_cm);
  row("mean(e_c) [cm]", a.ec_mean_cm, b.ec_mean_cm);
  row("max(e_o) [rad]", a.eo_max, b.eo_max);
  row("mean(e_o) [rad]", a.eo_mean, b.eo_mean);
  return kExitOk;
}

int CmdGradcheck(const std::string& robot_path, std::uint64_t seed, int count, std::ostream& out,
                 std::ostream& err) {
  if (count < 1) {
    err << "error: --count must be >= 1\n";
    return kExitInvalidInput;
  }
  RobotModel model;
  try {
    model = LoadRobotModel(robot_path);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  }
  const GradcheckReport report = RunGradcheck(model, seed, count);
  PrintGradcheckReport(report, out);
  return report.Passed() ? kExitOk : kExitCheckFailed;
}

int CmdSplineDump(const std::string& scenario_path, int samples, std::ostream& out,
                  std::ostream& err) {
  if (samples < 2) {
    err << "error: --samples must be >= 2\n";
    return kExitInvalidInput;
  }
  std::vector<ViaPoint> via_points;
  try {
    via_points = LoadScenario(scenario_path).via_points;
    const PathSpline path(via_points);
    out << "s,px,py,pz,qw,qx,qy,qz\n";
    out << std::setprecision(10);
    for (int i = 0; i < samples; ++i) {
      const double s = static_cast<double>(i) / (samples - 1);
      const Eigen::Vector3d p = path.SamplePosition(s).p;
      const Eigen::Quaterniond r(path.SampleOrientation(s).rotation);
      out << s << "," << p.x() << "," << p.y() << "," << p.z() << "," << r.w() << "," << r.x()
          << "," << r.y() << "," << r.z() << "\n";
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  }
  return kExitOk;
}

}  // namespace rmpcc::tools
