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

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "commands.hpp"

int main(int argc, char** argv) {
  using namespace rmpcc::tools;
  CLI::App app{"Reactive model predictive contouring control: simulation and checks"};
  app.require_subcommand(1);

  RunOptions run;
  std::string controller;
  bool no_plots = false;
  bool no_timing = false;
  CLI::App* run_cmd = app.add_subcommand("run", "Run a closed-loop scenario");
  run_cmd->add_option("--scenario", run.scenario_path, "Scenario file")->required();
  run_cmd->add_option("--robot", run.robot_path, "Robot file (overrides the scenario)");
  run_cmd->add_option("--ocp", run.ocp_path, "OCP config file (overrides the scenario)");
  run_cmd->add_option("--controller", controller, "rmpcc or tt_mpc (overrides the scenario)");
  run_cmd->add_option("--out", run.output_dir, "Output directory")->capture_default_str();
  run_cmd->add_flag("--no-plots", no_plots, "Skip the SVG plots");
  run_cmd->add_flag("--no-timing", no_timing,
                    "Write zero timing columns so repeated runs are byte-identical");

  std::string trace_a;
  std::string trace_b;
  CLI::App* compare_cmd = app.add_subcommand("compare", "Compare the metrics of two traces");
  compare_cmd->add_option("trace_a", trace_a, "First trace CSV")->required();
  compare_cmd->add_option("trace_b", trace_b, "Second trace CSV")->required();

  std::string robot_path;
  std::uint64_t seed = 1;
  int count = 200;
  CLI::App* grad_cmd =
      app.add_subcommand("gradcheck", "Check analytic Jacobians against finite differences");
  grad_cmd->add_option("--robot", robot_path, "Robot file")->required();
  grad_cmd->add_option("--seed", seed, "Random seed")->capture_default_str();
  grad_cmd->add_option("--count", count, "Random states per quantity")->capture_default_str();

  std::string dump_scenario;
  int samples = 201;
  CLI::App* dump_cmd = app.add_subcommand("spline-dump", "Print the sampled reference path");
  dump_cmd->add_option("--scenario", dump_scenario, "Scenario file")->required();
  dump_cmd->add_option("--samples", samples, "Number of samples")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalidInput;
  }

  if (*run_cmd) {
    if (!controller.empty()) run.controller = controller;
    run.plots = !no_plots;
    run.record_timing = !no_timing;
    return CmdRun(run, std::cout, std::cerr);
  }
  if (*compare_cmd) return CmdCompare(trace_a, trace_b, std::cout, std::cerr);
  if (*grad_cmd) return CmdGradcheck(robot_path, seed, count, std::cout, std::cerr);
  return CmdSplineDump(dump_scenario, samples, std::cout, std::cerr);
}
