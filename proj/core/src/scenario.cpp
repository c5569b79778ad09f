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

#include "rmpcc/scenario.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <Eigen/Geometry>

#include "rmpcc/config.hpp"
#include "rmpcc/robot_model.hpp"

namespace rmpcc {

Eigen::Vector3d ObstacleTrack::CenterAt(double t) const {
  if (keyframes.empty()) throw std::invalid_argument("ObstacleTrack: no keyframes");
  if (t <= keyframes.front().t) return keyframes.front().center;
  for (size_t i = 1; i < keyframes.size(); ++i) {
    const ObstacleKeyframe& a = keyframes[i - 1];
    const ObstacleKeyframe& b = keyframes[i];
    if (t <= b.t) {
      const double span = b.t - a.t;
      if (span <= 0.0) return b.center;
      const double w = (t - a.t) / span;
      return (1.0 - w) * a.center + w * b.center;
    }
  }
  return keyframes.back().center;
}

void ObstacleTrack::Validate() const {
  if (!(radius > 0.0)) throw std::invalid_argument("obstacle radius must be > 0");
  if (keyframes.empty()) throw std::invalid_argument("obstacle track needs a keyframe");
  for (size_t i = 1; i < keyframes.size(); ++i) {
    if (keyframes[i].t < keyframes[i - 1].t) {
      throw std::invalid_argument("obstacle keyframe times must not decrease");
    }
  }
}

const char* ControllerName(ControllerKind kind) {
  return kind == ControllerKind::kRmpcc ? "rmpcc" : "tt_mpc";
}

ControllerKind ParseControllerKind(const std::string& name) {
  if (name == "rmpcc") return ControllerKind::kRmpcc;
  if (name == "tt_mpc") return ControllerKind::kTtMpc;
  throw std::invalid_argument("unknown controller '" + name + "' (expected rmpcc or tt_mpc)");
}

int Scenario::num_ticks() const { return static_cast<int>(std::llround(duration / dt)) + 1; }

void Scenario::Validate() const {
  if (!(duration > 0.0)) throw std::invalid_argument("scenario duration must be > 0");
  if (!(dt > 0.0)) throw std::invalid_argument("scenario dt must be > 0");
  if (std::abs(duration / dt - std::round(duration / dt)) > 1e-6) {
    throw std::invalid_argument("scenario duration must be a multiple of dt");
  }
  if (robot_path.empty()) throw std::invalid_argument("scenario has no robot file");
  if (q0.size() == 0 && ik_seed.size() == 0) {
    throw std::invalid_argument("scenario needs q0 or ik_seed");
  }
  if (!(joint_noise >= 0.0)) throw std::invalid_argument("joint_noise must be >= 0");
  if (obstacle) obstacle->Validate();
  PathSpline path(via_points);
}

std::vector<ViaPoint> LemniscateViaPoints(double scale, int n_points,
                                          const LemniscateOptions& options) {
  if (n_points < 8) throw std::invalid_argument("lemniscate needs at least 8 points");
  if (!(scale > 0.0)) throw std::invalid_argument("lemniscate scale must be > 0");
  std::vector<ViaPoint> points(n_points);
  for (int i = 0; i < n_points; ++i) {
    const double theta = 2.0 * std::numbers::pi * i / (n_points - 1);
    const Eigen::Vector3d offset(options.depth * std::sin(theta), scale * std::sin(theta),
                                 scale * std::sin(theta) * std::cos(theta));
    ViaPoint& v = points[i];
    v.position = options.center + offset;
    v.orientation =
        lie::Exp(options.tilt * Eigen::Vector3d::UnitX().cross(offset)) * options.facing;
    v.s = static_cast<double>(i) / (n_points - 1);
  }
  // Close the loop exactly despite the rounding of sin(2π).
  points.back().position = points.front().position;
  points.back().orientation = points.front().orientation;
  return points;
}

Scenario LemniscateScenario(double scale, int n_points, const LemniscateOptions& options) {
  Scenario s;
  s.name = "lemniscate";
  s.duration = 24.0;
  s.via_points = LemniscateViaPoints(scale, n_points, options);
  return s;
}

std::vector<ViaPoint> LineViaPoints(const Eigen::Vector3d& start, const Eigen::Vector3d& end,
                                    int n_points, const lie::RotationSO3& orientation) {
  if (n_points < 2) throw std::invalid_argument("line needs at least 2 points");
  std::vector<ViaPoint> points(n_points);
  for (int i = 0; i < n_points; ++i) {
    const double w = static_cast<double>(i) / (n_points - 1);
    points[i].position = (1.0 - w) * start + w * end;
    points[i].orientation = orientation;
    points[i].s = w;
  }
  return points;
}

std::vector<ViaPoint> LoadViaPoints(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open via-point file: " + path);
  std::vector<Eigen::Vector3d> positions;
  std::vector<lie::RotationSO3> orientations;
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream row(line);
    double v[7];
    int count = 0;
    while (count < 7 && row >> v[count]) ++count;
    if (count == 0 && row.eof()) continue;
    std::string extra;
    if (count != 7 || (row >> extra)) {
      throw std::invalid_argument(path + " line " + std::to_string(line_number) +
                                  ": expected px py pz qw qx qy qz");
    }
    const Eigen::Quaterniond quat(v[3], v[4], v[5], v[6]);
    if (std::abs(quat.norm() - 1.0) > 1e-6) {
      throw std::invalid_argument(path + " line " + std::to_string(line_number) +
                                  ": quaternion is not unit length");
    }
    positions.emplace_back(v[0], v[1], v[2]);
    orientations.push_back(quat.normalized().toRotationMatrix());
  }
  std::vector<ViaPoint> points(positions.size());
  for (size_t i = 0; i < points.size(); ++i) {
    points[i].position = positions[i];
    points[i].orientation = orientations[i];
    points[i].s = points.size() > 1 ? static_cast<double>(i) / (points.size() - 1) : 0.0;
  }
  return points;
}

namespace {

Eigen::VectorXd ToVector(const std::vector<double>& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

Eigen::Vector3d ToVector3(const ConfigTable& t, const char* table, const char* key) {
  const std::vector<double> v = t.Array(table, key);
  if (v.size() != 3) {
    throw std::invalid_argument(t.source() + ": [" + table + "] " + key + " needs 3 values");
  }
  return {v[0], v[1], v[2]};
}

std::string Resolve(const std::filesystem::path& base, const std::string& file) {
  const std::filesystem::path p(file);
  return p.is_absolute() ? p.string() : (base / p).lexically_normal().string();
}

}  // namespace

Scenario LoadScenario(const std::string& path) {
  const ConfigTable t = ConfigTable::Load(path);
  t.RequireKnown({
      {"scenario",
       {"name", "robot", "ocp", "controller", "duration", "dt", "seed", "q0", "ik_seed", "vs0",
        "joint_noise"}},
      {"path",
       {"type", "scale", "points", "center", "depth", "tilt", "facing_rpy", "start", "end",
        "file"}},
      {"obstacle", {"radius", "track"}},
  });
  const std::filesystem::path base = std::filesystem::path(path).parent_path();
  Scenario s;
  s.name = t.Has("scenario", "name") ? t.String("scenario", "name") : "scenario";
  s.robot_path = Resolve(base, t.String("scenario", "robot"));
  if (t.Has("scenario", "ocp")) s.ocp_path = Resolve(base, t.String("scenario", "ocp"));
  if (t.Has("scenario", "controller")) {
    s.controller = ParseControllerKind(t.String("scenario", "controller"));
  }
  s.duration = t.Number("scenario", "duration");
  if (t.Has("scenario", "dt")) s.dt = t.Number("scenario", "dt");
  if (t.Has("scenario", "seed")) {
    const int seed = t.Integer("scenario", "seed");
    if (seed < 0) throw std::invalid_argument(path + ": seed must be >= 0");
    s.seed = static_cast<std::uint64_t>(seed);
  }
  if (t.Has("scenario", "q0")) s.q0 = ToVector(t.Array("scenario", "q0"));
  if (t.Has("scenario", "ik_seed")) s.ik_seed = ToVector(t.Array("scenario", "ik_seed"));
  if (t.Has("scenario", "vs0")) s.vs0 = t.Number("scenario", "vs0");
  if (t.Has("scenario", "joint_noise")) s.joint_noise = t.Number("scenario", "joint_noise");

  const std::string type = t.String("path", "type");
  lie::RotationSO3 facing = LemniscateOptions().facing;
  if (t.Has("path", "facing_rpy")) {
    const Eigen::Vector3d rpy = ToVector3(t, "path", "facing_rpy");
    facing = RotationFromRpy(rpy.x(), rpy.y(), rpy.z());
  }
  if (type == "lemniscate") {
    LemniscateOptions options;
    options.facing = facing;
    if (t.Has("path", "center")) options.center = ToVector3(t, "path", "center");
    if (t.Has("path", "depth")) options.depth = t.Number("path", "depth");
    if (t.Has("path", "tilt")) options.tilt = t.Number("path", "tilt");
    s.via_points = LemniscateViaPoints(t.Number("path", "scale"), t.Integer("path", "points"),
                                       options);
  } else if (type == "line") {
    const int points = t.Has("path", "points") ? t.Integer("path", "points") : 2;
    s.via_points = LineViaPoints(ToVector3(t, "path", "start"), ToVector3(t, "path", "end"),
                                 points, facing);
  } else if (type == "file") {
    s.via_points = LoadViaPoints(Resolve(base, t.String("path", "file")));
  } else {
    throw std::invalid_argument(path + ": path type must be lemniscate, line or file");
  }

  if (t.HasTable("obstacle")) {
    ObstacleTrack track;
    track.radius = t.Number("obstacle", "radius");
    for (const std::vector<double>& k : t.NestedArray("obstacle", "track")) {
      if (k.size() != 4) {
        throw std::invalid_argument(path + ": obstacle keyframes are [t, x, y, z]");
      }
      track.keyframes.push_back({k[0], Eigen::Vector3d(k[1], k[2], k[3])});
    }
    s.obstacle = track;
  }
  s.Validate();
  return s;
}

}  // namespace rmpcc
