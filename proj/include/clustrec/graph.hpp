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

#pragma once

#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "clustrec/dataset.hpp"

namespace clustrec {

struct ReducedDataset {
  Eigen::MatrixXd matrix;                   // n x q scores
  std::vector<double> explained_variance;   // per kept component; empty if PCA is off
  Eigen::RowVectorXd mean_vector;           // length m, zero if PCA is off
  Eigen::MatrixXd components;               // m x q orthonormal directions
};

inline constexpr double kDefaultVarianceTarget = 0.90;
inline constexpr double kDefaultThreshold = 0.9;

// Centred PCA through the eigendecomposition of whichever of the covariance
// (m x m) or Gram (n x n) matrix is smaller. Keeps the fewest components
// whose cumulative explained variance reaches `variance_target`. The largest
// magnitude coordinate of each direction is made positive. When disabled the
// input passes through unchanged (no centring).
ReducedDataset PcaReduce(const NumericDataset& d,
                         double variance_target = kDefaultVarianceTarget,
                         bool enabled = true);

// u.v / (|u| |v|), 0 when either vector is zero.
double CosineSimilarity(const Eigen::Ref<const Eigen::RowVectorXd>& u,
                        const Eigen::Ref<const Eigen::RowVectorXd>& v);

struct Edge {
  int i = 0;
  int j = 0;  // i < j
  double w = 0.0;
  bool operator==(const Edge&) const = default;
};

class SimilarityGraph {
 public:
  SimilarityGraph() = default;
  SimilarityGraph(int n, double threshold, std::vector<Edge> edges);

  int node_count() const { return n_; }
  double threshold() const { return threshold_; }
  const std::vector<Edge>& edges() const { return edges_; }
  // (neighbour, weight) pairs, neighbours ascending.
  const std::vector<std::pair<int, double>>& adjacency(int node) const {
    return adjacency_[node];
  }
  double weight(int i, int j) const;

  // Symmetric n x n weighted adjacency with zero diagonal.
  Eigen::MatrixXd Dense() const;

  std::string Serialize() const;
  static SimilarityGraph Parse(const std::string& text);

 private:
  int n_ = 0;
  double threshold_ = kDefaultThreshold;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::pair<int, double>>> adjacency_;
};

// Edge (i, j, s_ij) for every pair with s_ij strictly above the threshold.
SimilarityGraph BuildSimilarityGraph(const ReducedDataset& r,
                                     double threshold = kDefaultThreshold);

}  // namespace clustrec
