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

#include "rmpcc/trace.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace rmpcc {
namespace {

constexpr const char* kTail[] = {"s",     "vs", "vds", "ec",     "eo",      "mu",
                                 "dself", "denv", "ax", "status", "T_total", "T_dist",
                                 "T_lin", "T_qp"};
constexpr int kTailCount = sizeof(kTail) / sizeof(kTail[0]);

std::vector<std::string> SplitCsv(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream stream(line);
  while (std::getline(stream, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

double ParseField(const std::string& text, int line_number, const std::string& column) {
  char* end = nullptr;
  const double value = std::strtod(text.c_str(), &end);
  if (text.empty() || end != text.c_str() + text.size() || std::isnan(value)) {
    throw std::invalid_argument("trace line " + std::to_string(line_number) + ": column '" +
                                column + "' is not a number: '" + text + "'");
  }
  return value;
}

}  // namespace

std::string TraceHeader(int dof) {
  std::ostringstream out;
  out << "t";
  for (int i = 1; i <= dof; ++i) out << ",q" << i;
  for (int i = 1; i <= dof; ++i) out << ",qd" << i;
  for (const char* name : kTail) out << ',' << name;
  return out.str();
}

void WriteTraceCsv(const TraceLog& trace, std::ostream& out) {
  out << TraceHeader(trace.dof) << '\n';
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  for (const TraceRecord& r : trace.records) {
    out << r.t;
    for (int i = 0; i < trace.dof; ++i) out << ',' << r.q[i];
    for (int i = 0; i < trace.dof; ++i) out << ',' << r.qd[i];
    out << ',' << r.s << ',' << r.vs << ',' << r.vds << ',' << r.ec << ',' << r.eo << ','
        << r.mu << ',' << r.dself << ',' << r.denv << ',' << r.ax << ',' << r.status << ','
        << r.t_total << ',' << r.t_dist << ',' << r.t_lin << ',' << r.t_qp << '\n';
  }
}

void SaveTraceCsv(const TraceLog& trace, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write trace file: " + path);
  WriteTraceCsv(trace, out);
  if (!out) throw std::runtime_error("failed writing trace file: " + path);
}

TraceLog ReadTraceCsv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("trace: empty file");
  const std::vector<std::string> header = SplitCsv(line);
  const int count = static_cast<int>(header.size());
  const int dof = (count - 1 - kTailCount) / 2;
  if (dof < 1 || 1 + 2 * dof + kTailCount != count || line != TraceHeader(dof)) {
    throw std::invalid_argument("trace line 1: header does not match the trace schema");
  }
  TraceLog trace;
  trace.dof = dof;
  int line_number = 1;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.empty()) continue;
    const std::vector<std::string> f = SplitCsv(line);
    if (static_cast<int>(f.size()) != count) {
      throw std::invalid_argument("trace line " + std::to_string(line_number) + ": expected " +
                                  std::to_string(count) + " fields, got " +
                                  std::to_string(f.size()));
    }
    auto num = [&](int column) { return ParseField(f[column], line_number, header[column]); };
    TraceRecord r;
    r.t = num(0);
    r.q.resize(dof);
    r.qd.resize(dof);
    for (int i = 0; i < dof; ++i) {
      r.q[i] = num(1 + i);
      r.qd[i] = num(1 + dof + i);
    }
    int c = 1 + 2 * dof;
    r.s = num(c++);
    r.vs = num(c++);
    r.vds = num(c++);
    r.ec = num(c++);
    r.eo = num(c++);
    r.mu = num(c++);
    r.dself = num(c++);
    r.denv = num(c++);
    r.ax = num(c++);
    r.status = f[c++];
    if (r.status.empty()) {
      throw std::invalid_argument("trace line " + std::to_string(line_number) + ": empty status");
    }
    r.t_total = num(c++);
    r.t_dist = num(c++);
    r.t_lin = num(c++);
    r.t_qp = num(c++);
    trace.records.push_back(std::move(r));
  }
  if (trace.records.size() >= 2) trace.dt = trace.records[1].t - trace.records[0].t;
  return trace;
}

TraceLog LoadTraceCsv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open trace file: " + path);
  return ReadTraceCsv(in);
}

}  // namespace rmpcc
