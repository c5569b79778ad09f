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

#ifndef RMPCC_TOOLS_COMMANDS_HPP_
#define RMPCC_TOOLS_COMMANDS_HPP_

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

namespace rmpcc::tools {

// Exit codes shared by all commands.
inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitInvalidInput = 2;
inline constexpr int kExitAborted = 3;

struct RunOptions {
  std::string scenario_path;
  // Override the files named by the scenario when non-empty.
  std::string robot_path;
  std::string ocp_path;
  std::optional<std::string> controller;
  std::string output_dir = ".";
  bool plots = true;
  bool record_timing = true;
};

// Writes trace.csv, metrics.txt and, with plots enabled, safety.svg and
// progress.svg into the output directory.
int CmdRun(const RunOptions& options, std::ostream& out, std::ostream& err);

// Prints a side-by-side metrics table of two traces.
int CmdCompare(const std::string& trace_a, const std::string& trace_b, std::ostream& out,
               std::ostream& err);

int CmdGradcheck(const std::string& robot_path, std::uint64_t seed, int count,
                 std::ostream& out, std::ostream& err);

// Samples the scenario's path at `samples` evenly spaced s values as CSV.
int CmdSplineDump(const std::string& scenario_path, int samples, std::ostream& out,
                  std::ostream& err);

}  // namespace rmpcc::tools

#endif  // RMPCC_TOOLS_COMMANDS_HPP_
