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

// Gradient checker alone. Built against the sign-flipped core library to
// confirm the check fails on a wrong orientation Jacobian.
#include <cstdint>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Analytic-vs-finite-difference gradient check"};
  std::string robot_path;
  std::uint64_t seed = 1;
  int count = 200;
  app.add_option("--robot", robot_path, "Robot file")->required();
  app.add_option("--seed", seed, "Random seed");
  app.add_option("--count", count, "Random states per quantity");
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return rmpcc::tools::kExitInvalidInput;
  }
  return rmpcc::tools::CmdGradcheck(robot_path, seed, count, std::cout, std::cerr);
}
