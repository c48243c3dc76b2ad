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

// Gradient-boosted regression trees trained on pairwise logistic (RankNet)
// gradients. For every pair (i, j) of one group with relevance_i >
// relevance_j the loss is log(1 + exp(-(s_i - s_j))); each round fits a
// least-squares tree to the per-instance negative gradients, sets every leaf
// to a Newton step (summed gradient over summed curvature) and adds it with
// shrinkage.

#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "clustrec/performance.hpp"

namespace clustrec {

struct MetaInstance {
  Eigen::RowVectorXd features;  // meta-features followed by the ordinal
  double relevance = 0.0;       // |A| - R + 1
  std::string group;            // dataset name
  int ordinal = 0;
};

using FeatureMap = std::map<std::string, Eigen::RowVectorXd>;

// Feature vector of one (dataset, algorithm) instance.
Eigen::RowVectorXd InstanceFeatures(const Eigen::RowVectorXd& meta, int ordinal);

// |D| * |A| instances in table order.
std::vector<MetaInstance> AssembleTrainingSet(const FeatureMap& features,
                                              const PerformanceTable& table);

struct RankerConfig {
  int trees = 200;
  int depth = 4;
  double shrinkage = 0.1;
  std::uint64_t seed = 0;

  void Validate() const;
  std::string ToString() const;
};

struct TreeNode {
  int feature = -1;  // -1 for a leaf
  double threshold = 0.0;  // x <= threshold goes left
  int left = -1;
  int right = -1;
  double value = 0.0;
};

struct RegressionTree {
  std::vector<TreeNode> nodes;  // root first
  double Predict(const Eigen::RowVectorXd& x) const;
};

struct RankerModel {
  int feature_count = 0;
  RankerConfig config;
  std::vector<RegressionTree> trees;

  double Score(const Eigen::RowVectorXd& x) const;
  // Every feature index some split uses.
  std::vector<int> SplitFeatures() const;

  std::string Serialize() const;
  static RankerModel Parse(const std::string& text);
};

// Instances are sorted by (group, ordinal) before fitting, so the input
// order does not matter.
RankerModel TrainRanker(std::vector<MetaInstance> instances,
                        const RankerConfig& config);

struct RecommendationEntry {
  std::string algorithm;
  int ordinal = 0;
  double score = 0.0;
};

struct RankedRecommendation {
  std::string dataset;
  std::string measure;
  std::vector<RecommendationEntry> entries;  // best first
};

// Scores meta ++ ordinal for every algorithm; descending, ties by ordinal.
RankedRecommendation Recommend(const RankerModel& model,
                               const Eigen::RowVectorXd& meta,
                               std::span<const std::string> algorithms,
                               const std::string& dataset = {},
                               const std::string& measure = {});

}  // namespace clustrec
