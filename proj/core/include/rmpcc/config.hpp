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

#ifndef RMPCC_CONFIG_HPP_
#define RMPCC_CONFIG_HPP_

#include <istream>
#include <map>
#include <string>
#include <vector>

#include "rmpcc/ocp.hpp"

namespace rmpcc {

// Flat key/table text format: [table] headers, `key = value` lines, `#`
// comments, quoted strings, numbers, booleans and one-line (nested) numeric
// arrays. A subset of TOML; see docs/file_formats.md.
class ConfigTable {
 public:
  // Throws std::invalid_argument with a line-independent message on syntax
  // errors.
  static ConfigTable Parse(std::istream& in, const std::string& source_name);
  static ConfigTable Load(const std::string& path);

  bool Has(const std::string& table, const std::string& key) const;
  bool HasTable(const std::string& table) const;

  std::string String(const std::string& table, const std::string& key) const;
  double Number(const std::string& table, const std::string& key) const;
  int Integer(const std::string& table, const std::string& key) const;
  bool Bool(const std::string& table, const std::string& key) const;
  std::vector<double> Array(const std::string& table, const std::string& key) const;
  std::vector<std::vector<double>> NestedArray(const std::string& table,
                                               const std::string& key) const;

  // Throws std::invalid_argument when a table or key outside `allowed` is
  // present (catches misspelled keys).
  void RequireKnown(const std::map<std::string, std::vector<std::string>>& allowed) const;

  const std::string& source() const { return source_; }

 private:
  const std::string& Raw(const std::string& table, const std::string& key) const;
  [[noreturn]] void Fail(const std::string& table, const std::string& key,
                         const std::string& message) const;

  std::string source_;
  std::map<std::string, std::map<std::string, std::string>> values_;
};

// Reads an OCP config; absent keys keep their defaults. Relative file paths
// (mlp_weights) are resolved against the config file's directory.
OcpConfig LoadOcpConfig(const std::string& path);
OcpConfig OcpConfigFromTable(const ConfigTable& table, const std::string& base_dir);

}  // namespace rmpcc

#endif  // RMPCC_CONFIG_HPP_
