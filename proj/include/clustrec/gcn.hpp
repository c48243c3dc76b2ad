/*
 * Copyright 2026 The clustrec Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Graph convolutional classifier over whole graphs.
//
//   H0 = X,  A_l = F H_l W_l,  H_{l+1} = relu(A_l)      l = 0..L-1
//   e  = mean over nodes of H_L                          (readout)
//   z  = e Wc + bc                                       (logits)
//
// with F = B^-1/2 (Z + I) B^-1/2 and B the degree matrix of Z + I. Training
// minimizes the mean softmax cross-entropy over all graphs with full-batch
// Adam. The readout e is the graph embedding.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace clustrec {

Eigen::MatrixXd NormalizeAdjacency(const Eigen::MatrixXd& z);

struct GcnConfig {
  int layers = 4;
  int embedding = 300;
  double lr = 0.006;
  int max_epochs = 60;
  int patience = 10;
  std::uint64_t seed = 0;
  int jobs = 1;  // not part of the model identity

  void Validate() const;
  std::string ToString() const;
};

// Parameter tensors: W_0..W_{L-1}, then Wc (embedding x classes), then bc
// (1 x classes). Gradients use the same layout.
struct GcnModel {
  int input_dim = 0;
  int embedding = 0;
  int classes = 0;
  std::vector<Eigen::MatrixXd> tensors;

  int layers() const { return static_cast<int>(tensors.size()) - 2; }
  const Eigen::MatrixXd& classifier() const { return tensors[layers()]; }
  const Eigen::MatrixXd& bias() const { return tensors[layers() + 1]; }

  // Glorot-uniform weights, zero bias.
  static GcnModel Init(int input_dim, int embedding, int layers, int classes,
                       std::uint64_t seed);

  std::string Serialize() const;
  static GcnModel Parse(const std::string& data);
};

struct GraphInput {
  std::string name;
  Eigen::MatrixXd f;  // normalized adjacency
  Eigen::MatrixXd x;  // node features
  int label = 0;
};

GraphInput MakeGraphInput(std::string name, const Eigen::MatrixXd& z,
                          Eigen::MatrixXd x, int label);

struct GcnForward {
  std::vector<Eigen::MatrixXd> hidden;  // H_0..H_L
  Eigen::RowVectorXd embedding;
  Eigen::RowVectorXd logits;
};

GcnForward Forward(const GcnModel& model, const Eigen::MatrixXd& f,
                   const Eigen::MatrixXd& x);

// Cross-entropy of one graph and the gradient of every tensor.
double LossAndGradient(const GcnModel& model, const GraphInput& g,
                       std::vector<Eigen::MatrixXd>* gradient);

double Loss(const GcnModel& model, const GraphInput& g);

struct GcnTrainResult {
  GcnModel model;
  double initial_loss = 0.0;
  std::vector<double> loss_history;  // training loss after each epoch
  int epochs = 0;
  double accuracy = 0.0;  // training accuracy of the final model
};

// Stops after max_epochs or once `patience` consecutive epochs fail to
// improve strictly on the best loss seen (the initial loss included). The
// final parameters are returned.
GcnTrainResult TrainGcn(const std::vector<GraphInput>& graphs, int classes,
                        const GcnConfig& config);

std::vector<Eigen::RowVectorXd> EmbedAll(const GcnModel& model,
                                         const std::vector<GraphInput>& graphs);

}  // namespace clustrec
