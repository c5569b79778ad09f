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

#include "rmpcc/config.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

namespace rmpcc {
namespace {

std::string Trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

// Drops a trailing `# comment` outside of quotes.
std::string StripComment(const std::string& s) {
  bool quoted = false;
  for (size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '"') quoted = !quoted;
    if (s[i] == '#' && !quoted) return s.substr(0, i);
  }
  return s;
}

double ToNumber(const std::string& text, bool* ok) {
  const std::string t = Trim(text);
  char* end = nullptr;
  const double value = std::strtod(t.c_str(), &end);
  *ok = !t.empty() && end == t.c_str() + t.size() && std::isfinite(value);
  return value;
}

std::vector<std::string> SplitTopLevel(const std::string& body) {
  std::vector<std::string> parts;
  int depth = 0;
  std::string current;
  for (char c : body) {
    if (c == '[') ++depth;
    if (c == ']') --depth;
    if (c == ',' && depth == 0) {
      parts.push_back(Trim(current));
      current.clear();
    } else {
      current += c;
    }
  }
  if (!Trim(current).empty()) parts.push_back(Trim(current));
  return parts;
}

bool Bracketed(const std::string& s) { return s.size() >= 2 && s.front() == '[' && s.back() == ']'; }

}  // namespace

ConfigTable ConfigTable::Parse(std::istream& in, const std::string& source_name) {
  // Comments are stripped up front: the INI reader keeps trailing comments
  // as part of the value.
  std::ostringstream cleaned;
  std::string line;
  while (std::getline(in, line)) cleaned << StripComment(line) << '\n';
  std::istringstream stream(cleaned.str());
  boost::property_tree::ptree tree;
  try {
    boost::property_tree::ini_parser::read_ini(stream, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw std::invalid_argument(source_name + ": " + e.message() + " (line " +
                                std::to_string(e.line()) + ")");
  }
  ConfigTable table;
  table.source_ = source_name;
  for (const auto& [section, children] : tree) {
    if (children.empty() && !children.data().empty()) {
      throw std::invalid_argument(source_name + ": key '" + section + "' outside of a [table]");
    }
    auto& entries = table.values_[section];
    for (const auto& [key, value] : children) entries[key] = Trim(value.data());
  }
  return table;
}

ConfigTable ConfigTable::Load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  return Parse(in, path);
}

bool ConfigTable::HasTable(const std::string& table) const { return values_.count(table) > 0; }

bool ConfigTable::Has(const std::string& table, const std::string& key) const {
  const auto it = values_.find(table);
  return it != values_.end() && it->second.count(key) > 0;
}

const std::string& ConfigTable::Raw(const std::string& table, const std::string& key) const {
  const auto it = values_.find(table);
  if (it == values_.end() || !it->second.count(key)) Fail(table, key, "missing");
  return it->second.at(key);
}

void ConfigTable::Fail(const std::string& table, const std::string& key,
                       const std::string& message) const {
  throw std::invalid_argument(source_ + ": [" + table + "] " + key + ": " + message);
}

std::string ConfigTable::String(const std::string& table, const std::string& key) const {
  const std::string& raw = Raw(table, key);
  if (raw.size() >= 2 && raw.front() == '"' && raw.back() == '"') {
    return raw.substr(1, raw.size() - 2);
  }
  if (raw.empty() || raw.find_first_of("\"[], ") != std::string::npos) {
    Fail(table, key, "expected a string");
  }
  return raw;
}

double ConfigTable::Number(const std::string& table, const std::string& key) const {
  bool ok = false;
  const double value = ToNumber(Raw(table, key), &ok);
  if (!ok) Fail(table, key, "expected a number");
  return value;
}

int ConfigTable::Integer(const std::string& table, const std::string& key) const {
  const double value = Number(table, key);
  if (value != std::floor(value) || std::abs(value) > 1e9) Fail(table, key, "expected an integer");
  return static_cast<int>(value);
}

bool ConfigTable::Bool(const std::string& table, const std::string& key) const {
  const std::string& raw = Raw(table, key);
  if (raw == "true") return true;
  if (raw == "false") return false;
  Fail(table, key, "expected true or false");
}

std::vector<double> ConfigTable::Array(const std::string& table, const std::string& key) const {
  const std::string& raw = Raw(table, key);
  if (!Bracketed(raw)) Fail(table, key, "expected an array [a, b, ...]");
  std::vector<double> out;
  for (const std::string& part : SplitTopLevel(raw.substr(1, raw.size() - 2))) {
    bool ok = false;
    out.push_back(ToNumber(part, &ok));
    if (!ok) Fail(table, key, "bad array element '" + part + "'");
  }
  return out;
}

std::vector<std::vector<double>> ConfigTable::NestedArray(const std::string& table,
                                                          const std::string& key) const {
  const std::string& raw = Raw(table, key);
  if (!Bracketed(raw)) Fail(table, key, "expected an array of arrays");
  std::vector<std::vector<double>> out;
  for (const std::string& row : SplitTopLevel(raw.substr(1, raw.size() - 2))) {
    if (!Bracketed(row)) Fail(table, key, "expected an inner array, got '" + row + "'");
    std::vector<double> values;
    for (const std::string& part : SplitTopLevel(row.substr(1, row.size() - 2))) {
      bool ok = false;
      values.push_back(ToNumber(part, &ok));
      if (!ok) Fail(table, key, "bad array element '" + part + "'");
    }
    out.push_back(std::move(values));
  }
  return out;
}

void ConfigTable::RequireKnown(
    const std::map<std::string, std::vector<std::string>>& allowed) const {
  for (const auto& [table, entries] : values_) {
    const auto it = allowed.find(table);
    if (it == allowed.end()) {
      throw std::invalid_argument(source_ + ": unknown table [" + table + "]");
    }
    for (const auto& [key, value] : entries) {
      if (std::find(it->second.begin(), it->second.end(), key) == it->second.end()) {
        throw std::invalid_argument(source_ + ": unknown key '" + key + "' in [" + table + "]");
      }
    }
  }
}

OcpConfig OcpConfigFromTable(const ConfigTable& t, const std::string& base_dir) {
  t.RequireKnown({
      {"horizon", {"N", "dt", "sqp_iters", "threads"}},
      {"weights", {"w_c", "w_l", "w_vs", "w_o", "w_qd", "w_dqd", "w_vds", "v_desired"}},
      {"barriers",
       {"singularity", "self_collision", "env_collision", "eps_sing", "eps_self", "eps_env",
        "delta_sing", "delta_self", "delta_env", "secant_rate"}},
      {"bounds", {"s_min", "s_max", "vs_min", "vs_max", "vds_min", "vds_max"}},
      {"distance",
       {"self_backend", "mlp_weights", "softmin_temperature", "manipulability_gradient"}},
      {"qp", {"max_iter", "tolerance", "rho", "scaling"}},
  });
  OcpConfig c;
  auto number = [&](const char* table, const char* key, double* out) {
    if (t.Has(table, key)) *out = t.Number(table, key);
  };
  auto integer = [&](const char* table, const char* key, int* out) {
    if (t.Has(table, key)) *out = t.Integer(table, key);
  };
  auto boolean = [&](const char* table, const char* key, bool* out) {
    if (t.Has(table, key)) *out = t.Bool(table, key);
  };
  integer("horizon", "N", &c.horizon);
  number("horizon", "dt", &c.dt);
  integer("horizon", "sqp_iters", &c.sqp_iterations);
  integer("horizon", "threads", &c.threads);

  Weights& w = c.weights;
  number("weights", "w_c", &w.w_c);
  number("weights", "w_l", &w.w_l);
  number("weights", "w_vs", &w.w_vs);
  number("weights", "w_o", &w.w_o);
  number("weights", "w_qd", &w.w_qd);
  number("weights", "w_dqd", &w.w_dqd);
  number("weights", "w_vds", &w.w_vds);
  number("weights", "v_desired", &w.v_desired);

  BarrierSettings& b = c.barriers;
  boolean("barriers", "singularity", &b.singularity);
  boolean("barriers", "self_collision", &b.self_collision);
  boolean("barriers", "env_collision", &b.env_collision);
  number("barriers", "eps_sing", &b.eps_sing);
  number("barriers", "eps_self", &b.eps_self);
  number("barriers", "eps_env", &b.eps_env);
  number("barriers", "delta_sing", &b.delta_sing);
  number("barriers", "delta_self", &b.delta_self);
  number("barriers", "delta_env", &b.delta_env);
  boolean("barriers", "secant_rate", &b.secant_rate);

  number("bounds", "s_min", &c.bounds.s_min);
  number("bounds", "s_max", &c.bounds.s_max);
  number("bounds", "vs_min", &c.bounds.vs_min);
  number("bounds", "vs_max", &c.bounds.vs_max);
  number("bounds", "vds_min", &c.bounds.vds_min);
  number("bounds", "vds_max", &c.bounds.vds_max);

  DistanceSettings& d = c.distance;
  if (t.Has("distance", "self_backend")) {
    const std::string backend = t.String("distance", "self_backend");
    if (backend == "capsule") {
      d.self_backend = SelfDistanceBackend::kCapsule;
    } else if (backend == "mlp") {
      d.self_backend = SelfDistanceBackend::kMlp;
    } else {
      throw std::invalid_argument(t.source() + ": self_backend must be capsule or mlp");
    }
  }
  if (t.Has("distance", "mlp_weights")) {
    const std::filesystem::path p = t.String("distance", "mlp_weights");
    d.mlp_weights = p.is_absolute() ? p.string() : (std::filesystem::path(base_dir) / p).string();
  }
  number("distance", "softmin_temperature", &d.softmin_temperature);
  if (t.Has("distance", "manipulability_gradient")) {
    const std::string mode = t.String("distance", "manipulability_gradient");
    if (mode == "fd") {
      d.manipulability_gradient = GradientMode::kFiniteDifference;
    } else if (mode == "analytic") {
      d.manipulability_gradient = GradientMode::kAnalytic;
    } else {
      throw std::invalid_argument(t.source() + ": manipulability_gradient must be fd or analytic");
    }
  }

  integer("qp", "max_iter", &c.qp.max_iterations);
  number("qp", "tolerance", &c.qp.tolerance);
  number("qp", "rho", &c.qp.rho);
  boolean("qp", "scaling", &c.qp.scaling);
  c.Validate();
  return c;
}

OcpConfig LoadOcpConfig(const std::string& path) {
  const ConfigTable table = ConfigTable::Load(path);
  return OcpConfigFromTable(table, std::filesystem::path(path).parent_path().string());
}

}  // namespace rmpcc
