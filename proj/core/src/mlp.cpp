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

#include "rmpcc/mlp.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <random>
#include <stdexcept>
#include <utility>

namespace rmpcc {

MlpModel::MlpModel(std::vector<Layer> layers) : layers_(std::move(layers)) {
  if (layers_.empty()) throw std::invalid_argument("MlpModel: no layers");
  for (size_t i = 0; i < layers_.size(); ++i) {
    const Layer& layer = layers_[i];
    if (layer.weights.rows() != layer.bias.size() || layer.weights.rows() == 0) {
      throw std::invalid_argument("MlpModel: layer " + std::to_string(i) +
                                  " bias does not match weight rows");
    }
    if (i > 0 && layer.weights.cols() != layers_[i - 1].weights.rows()) {
      throw std::invalid_argument("MlpModel: layer " + std::to_string(i) +
                                  " input does not match previous output");
    }
  }
  if (layers_.front().weights.cols() == 0 || layers_.front().weights.cols() % 3 != 0) {
    throw std::invalid_argument("MlpModel: input dimension must be 3 * dof");
  }
}

MlpModel MlpModel::Random(int dof, const std::vector<int>& hidden, int outputs, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::vector<Layer> layers;
  int in = 3 * dof;
  std::vector<int> widths = hidden;
  widths.push_back(outputs);
  for (int out : widths) {
    std::normal_distribution<double> normal(0.0, std::sqrt(2.0 / in));
    Layer layer{Eigen::MatrixXd(out, in), Eigen::VectorXd(out)};
    for (int r = 0; r < out; ++r) {
      for (int c = 0; c < in; ++c) layer.weights(r, c) = normal(rng);
      layer.bias[r] = 0.1 * normal(rng);
    }
    layers.push_back(std::move(layer));
    in = out;
  }
  return MlpModel(std::move(layers));
}

int MlpModel::input_dim() const {
  return layers_.empty() ? 0 : static_cast<int>(layers_.front().weights.cols());
}

int MlpModel::output_dim() const {
  return layers_.empty() ? 0 : static_cast<int>(layers_.back().weights.rows());
}

Eigen::VectorXd MlpModel::Features(const Eigen::VectorXd& q) {
  const int n = static_cast<int>(q.size());
  Eigen::VectorXd features(3 * n);
  features << q, q.array().cos().matrix(), q.array().sin().matrix();
  return features;
}

Eigen::VectorXd MlpModel::Forward(const Eigen::VectorXd& q) const {
  if (q.size() != dof()) throw std::invalid_argument("MlpModel::Forward: q has wrong size");
  Eigen::VectorXd a = Features(q);
  for (size_t i = 0; i < layers_.size(); ++i) {
    a = layers_[i].weights * a + layers_[i].bias;
    if (i + 1 < layers_.size()) a = a.cwiseMax(0.0);
  }
  return a;
}

void MlpModel::ForwardWithJacobian(const Eigen::VectorXd& q, Eigen::VectorXd* value,
                                   Eigen::MatrixXd* jacobian) const {
  const int n = dof();
  if (q.size() != n) throw std::invalid_argument("MlpModel: q has wrong size");
  // Forward pass, keeping the rectifier masks.
  std::vector<Eigen::VectorXd> masks;
  Eigen::VectorXd a = Features(q);
  for (size_t i = 0; i < layers_.size(); ++i) {
    a = layers_[i].weights * a + layers_[i].bias;
    if (i + 1 < layers_.size()) {
      masks.push_back((a.array() > 0.0).cast<double>().matrix());
      a = a.cwiseMax(0.0);
    }
  }
  *value = a;

  // Reverse accumulation: adjoint rows start at the identity on the output.
  Eigen::MatrixXd adjoint = layers_.back().weights;
  for (int i = static_cast<int>(layers_.size()) - 2; i >= 0; --i) {
    adjoint = (adjoint * masks[i].asDiagonal()) * layers_[i].weights;
  }
  // d features / d q = [I; -diag(sin q); diag(cos q)].
  const Eigen::VectorXd sin_q = q.array().sin().matrix();
  const Eigen::VectorXd cos_q = q.array().cos().matrix();
  *jacobian = adjoint.leftCols(n) - adjoint.middleCols(n, n) * sin_q.asDiagonal() +
              adjoint.rightCols(n) * cos_q.asDiagonal();
}

namespace {

constexpr const char* kMagic = "rmpcc_mlp";

void Expect(std::istream& in, const std::string& keyword) {
  std::string word;
  if (!(in >> word) || word != keyword) {
    throw std::invalid_argument("MLP file: expected '" + keyword + "'");
  }
}

double ReadNumber(std::istream& in) {
  double value;
  if (!(in >> value)) throw std::invalid_argument("MLP file: expected a number");
  if (!std::isfinite(value)) throw std::invalid_argument("MLP file: non-finite value");
  return value;
}

int ReadCount(std::istream& in) {
  long value;
  if (!(in >> value) || value <= 0 || value > 1'000'000) {
    throw std::invalid_argument("MLP file: expected a positive count");
  }
  return static_cast<int>(value);
}

}  // namespace

MlpModel ReadMlp(std::istream& in) {
  Expect(in, kMagic);
  int version;
  if (!(in >> version) || version != MlpModel::kFormatVersion) {
    throw std::invalid_argument("MLP file: unsupported version");
  }
  Expect(in, "layers");
  const int count = ReadCount(in);
  std::vector<MlpModel::Layer> layers;
  for (int l = 0; l < count; ++l) {
    Expect(in, "layer");
    const int out = ReadCount(in);
    const int inputs = ReadCount(in);
    MlpModel::Layer layer{Eigen::MatrixXd(out, inputs), Eigen::VectorXd(out)};
    for (int r = 0; r < out; ++r) {
      for (int c = 0; c < inputs; ++c) layer.weights(r, c) = ReadNumber(in);
    }
    for (int r = 0; r < out; ++r) layer.bias[r] = ReadNumber(in);
    layers.push_back(std::move(layer));
  }
  std::string trailing;
  if (in >> trailing) throw std::invalid_argument("MLP file: trailing content");
  return MlpModel(std::move(layers));
}

void WriteMlp(const MlpModel& model, std::ostream& out) {
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  out << kMagic << ' ' << MlpModel::kFormatVersion << '\n';
  out << "layers " << model.layers().size() << '\n';
  for (const MlpModel::Layer& layer : model.layers()) {
    out << "layer " << layer.weights.rows() << ' ' << layer.weights.cols() << '\n';
    for (int r = 0; r < layer.weights.rows(); ++r) {
      for (int c = 0; c < layer.weights.cols(); ++c) {
        out << (c ? " " : "") << layer.weights(r, c);
      }
      out << '\n';
    }
    for (int r = 0; r < layer.bias.size(); ++r) out << (r ? " " : "") << layer.bias[r];
    out << '\n';
  }
}

MlpModel LoadMlp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open MLP weights file: " + path);
  return ReadMlp(in);
}

void SaveMlp(const MlpModel& model, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write MLP weights file: " + path);
  WriteMlp(model, out);
  if (!out) throw std::runtime_error("failed writing MLP weights file: " + path);
}

}  // namespace rmpcc
