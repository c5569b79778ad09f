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

#ifndef RMPCC_MLP_HPP_
#define RMPCC_MLP_HPP_

#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace rmpcc {

// Fully connected network with ReLU hidden layers and an identity output
// layer, evaluated on the feature map q -> [q, cos q, sin q].
class MlpModel {
 public:
  struct Layer {
    Eigen::MatrixXd weights;  // out x in
    Eigen::VectorXd bias;     // out
  };

  static constexpr int kFormatVersion = 1;

  MlpModel() = default;
  // Throws std::invalid_argument when layer dimensions do not chain or the
  // first layer's input is not a multiple of 3.
  explicit MlpModel(std::vector<Layer> layers);

  // Random He-style initialization for the 3n -> hidden... -> outputs shape.
  static MlpModel Random(int dof, const std::vector<int>& hidden, int outputs, unsigned seed);

  int input_dim() const;
  int output_dim() const;
  int dof() const { return input_dim() / 3; }
  const std::vector<Layer>& layers() const { return layers_; }

  static Eigen::VectorXd Features(const Eigen::VectorXd& q);

  // Throws std::invalid_argument if q.size() != dof().
  Eigen::VectorXd Forward(const Eigen::VectorXd& q) const;

  // Output and output-by-q Jacobian by reverse accumulation.
  void ForwardWithJacobian(const Eigen::VectorXd& q, Eigen::VectorXd* value,
                           Eigen::MatrixXd* jacobian) const;

 private:
  std::vector<Layer> layers_;
};

// Text weights format, see docs/file_formats.md. Throws std::invalid_argument
// on malformed content and std::runtime_error on I/O failure.
MlpModel ReadMlp(std::istream& in);
void WriteMlp(const MlpModel& model, std::ostream& out);
MlpModel LoadMlp(const std::string& path);
void SaveMlp(const MlpModel& model, const std::string& path);

}  // namespace rmpcc

#endif  // RMPCC_MLP_HPP_
