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

#include "rmpcc/robot_model.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace rmpcc {
namespace {

class LineReader {
 public:
  LineReader(const std::string& line, int line_number)
      : stream_(line), line_number_(line_number) {}

  double Number(const char* what) {
    double value;
    if (!(stream_ >> value)) Fail(std::string("expected number for ") + what);
    return value;
  }

  int Integer(const char* what) {
    int value;
    if (!(stream_ >> value)) Fail(std::string("expected integer for ") + what);
    return value;
  }

  std::string Word(const char* what) {
    std::string value;
    if (!(stream_ >> value)) Fail(std::string("expected ") + what);
    return value;
  }

  void Keyword(const char* expected) {
    const std::string word = Word(expected);
    if (word != expected) Fail(std::string("expected keyword '") + expected + "'");
  }

  Eigen::Vector3d Vector(const char* what) {
    Eigen::Vector3d v;
    for (int i = 0; i < 3; ++i) v[i] = Number(what);
    return v;
  }

  bool AtEnd() {
    std::string rest;
    return !(stream_ >> rest);
  }

  [[noreturn]] void Fail(const std::string& message) const {
    throw std::invalid_argument("robot file line " + std::to_string(line_number_) + ": " +
                                message);
  }

 private:
  std::istringstream stream_;
  int line_number_;
};

Eigen::Isometry3d Origin(const Eigen::Vector3d& xyz, const Eigen::Vector3d& rpy) {
  Eigen::Isometry3d t = Eigen::Isometry3d::Identity();
  t.linear() = RotationFromRpy(rpy.x(), rpy.y(), rpy.z());
  t.translation() = xyz;
  return t;
}

void ReadLimits(LineReader& reader, Joint& joint) {
  reader.Keyword("limits");
  joint.q_min = reader.Number("q_min");
  joint.q_max = reader.Number("q_max");
  joint.qd_min = reader.Number("qd_min");
  joint.qd_max = reader.Number("qd_max");
}

}  // namespace

Eigen::Matrix3d RotationFromRpy(double roll, double pitch, double yaw) {
  return (Eigen::AngleAxisd(yaw, Eigen::Vector3d::UnitZ()) *
          Eigen::AngleAxisd(pitch, Eigen::Vector3d::UnitY()) *
          Eigen::AngleAxisd(roll, Eigen::Vector3d::UnitX()))
      .toRotationMatrix();
}

Eigen::VectorXd RobotModel::q_min() const {
  Eigen::VectorXd v(dof());
  for (int i = 0; i < dof(); ++i) v[i] = joints[i].q_min;
  return v;
}

Eigen::VectorXd RobotModel::q_max() const {
  Eigen::VectorXd v(dof());
  for (int i = 0; i < dof(); ++i) v[i] = joints[i].q_max;
  return v;
}

Eigen::VectorXd RobotModel::qd_min() const {
  Eigen::VectorXd v(dof());
  for (int i = 0; i < dof(); ++i) v[i] = joints[i].qd_min;
  return v;
}

Eigen::VectorXd RobotModel::qd_max() const {
  Eigen::VectorXd v(dof());
  for (int i = 0; i < dof(); ++i) v[i] = joints[i].qd_max;
  return v;
}

bool RobotModel::IsIgnoredPair(int link_a, int link_b) const {
  if (std::abs(link_a - link_b) <= 1) return true;
  return std::any_of(ignored_link_pairs.begin(), ignored_link_pairs.end(),
                     [&](const std::pair<int, int>& p) {
                       return (p.first == link_a && p.second == link_b) ||
                              (p.first == link_b && p.second == link_a);
                     });
}

void RobotModel::Validate() const {
  if (dof() < 1) throw std::invalid_argument("robot model: at least one joint required");
  for (const Joint& j : joints) {
    if (!(j.q_min < j.q_max)) {
      throw std::invalid_argument("robot model: joint '" + j.name + "' has q_min >= q_max");
    }
    if (!(j.qd_min < j.qd_max)) {
      throw std::invalid_argument("robot model: joint '" + j.name + "' has qd_min >= qd_max");
    }
    if (std::abs(j.axis.norm() - 1.0) > 1e-9) {
      throw std::invalid_argument("robot model: joint '" + j.name + "' axis is not unit length");
    }
  }
  for (const Capsule& c : capsules) {
    if (!(c.radius > 0.0)) throw std::invalid_argument("robot model: capsule radius must be > 0");
    if (c.link < 0 || c.link > dof()) {
      throw std::invalid_argument("robot model: capsule link index out of range");
    }
  }
  for (int row : manipulability_rows) {
    if (row < 0 || row > 5) {
      throw std::invalid_argument("robot model: manipulability row out of range");
    }
  }
  if (manipulability_rows.empty()) {
    throw std::invalid_argument("robot model: no manipulability rows");
  }
}

RobotModel ParseRobotModel(std::istream& in) {
  RobotModel model;
  model.name = "robot";
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    LineReader reader(line, line_number);
    std::istringstream probe(line);
    std::string keyword;
    if (!(probe >> keyword)) continue;
    reader.Word("keyword");

    if (keyword == "robot") {
      model.name = reader.Word("robot name");
    } else if (keyword == "base") {
      const Eigen::Vector3d xyz = reader.Vector("base xyz");
      const Eigen::Vector3d rpy = reader.Vector("base rpy");
      model.base = Origin(xyz, rpy);
    } else if (keyword == "joint") {
      Joint joint;
      joint.name = reader.Word("joint name");
      const std::string kind = reader.Word("joint kind");
      if (kind == "mdh") {
        // Modified (Craig) DH: RotX(alpha) TransX(a) RotZ(theta0) TransZ(d).
        const double a = reader.Number("a");
        const double alpha = reader.Number("alpha");
        const double d = reader.Number("d");
        const double theta0 = reader.Number("theta_offset");
        Eigen::Isometry3d t = Eigen::Isometry3d::Identity();
        t.rotate(Eigen::AngleAxisd(alpha, Eigen::Vector3d::UnitX()));
        t.translate(Eigen::Vector3d(a, 0.0, 0.0));
        t.rotate(Eigen::AngleAxisd(theta0, Eigen::Vector3d::UnitZ()));
        t.translate(Eigen::Vector3d(0.0, 0.0, d));
        joint.origin = t;
        joint.axis = Eigen::Vector3d::UnitZ();
      } else if (kind == "origin") {
        const Eigen::Vector3d xyz = reader.Vector("origin xyz");
        const Eigen::Vector3d rpy = reader.Vector("origin rpy");
        joint.origin = Origin(xyz, rpy);
        reader.Keyword("axis");
        joint.axis = reader.Vector("axis");
        if (joint.axis.norm() < 1e-12) reader.Fail("zero joint axis");
        joint.axis.normalize();
      } else {
        reader.Fail("unknown joint kind '" + kind + "'");
      }
      ReadLimits(reader, joint);
      model.joints.push_back(joint);
    } else if (keyword == "tool") {
      const Eigen::Vector3d xyz = reader.Vector("tool xyz");
      const Eigen::Vector3d rpy = reader.Vector("tool rpy");
      model.tool = Origin(xyz, rpy);
    } else if (keyword == "capsule") {
      Capsule capsule;
      capsule.link = reader.Integer("capsule link");
      capsule.p0 = reader.Vector("capsule p0");
      capsule.p1 = reader.Vector("capsule p1");
      capsule.radius = reader.Number("capsule radius");
      model.capsules.push_back(capsule);
    } else if (keyword == "ignore_pair") {
      const int a = reader.Integer("link a");
      const int b = reader.Integer("link b");
      model.ignored_link_pairs.emplace_back(a, b);
    } else if (keyword == "manipulability_rows") {
      model.manipulability_rows.clear();
      int row;
      std::istringstream rows(line);
      std::string skip;
      rows >> skip;
      while (rows >> row) model.manipulability_rows.push_back(row);
      continue;
    } else {
      reader.Fail("unknown keyword '" + keyword + "'");
    }
    if (!reader.AtEnd()) reader.Fail("trailing tokens");
  }
  model.Validate();
  return model;
}

RobotModel LoadRobotModel(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open robot file: " + path);
  return ParseRobotModel(in);
}

}  // namespace rmpcc
