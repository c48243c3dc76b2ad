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

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "clustrec/graph.hpp"
#include "clustrec/random.hpp"

namespace clustrec {

struct DeepWalkParams {
  int num_walks = 10;
  int walk_length = 40;
  int dim = 64;
  int window = 5;
  int negatives = 5;
  int epochs = 5;
  double lr = 0.025;

  void Validate() const;
  std::string ToString() const;  // used in artifact headers and config hashes
};

using Walk = std::vector<int>;
using WalkCorpus = std::vector<Walk>;

// Weight-proportional transitions over a fixed graph.
class WalkSampler {
 public:
  explicit WalkSampler(const SimilarityGraph& g);

  // Next node after `node`, or -1 when it has no neighbours.
  int Step(int node, Rng& rng) const;
  Walk Sample(int start, int length, Rng& rng) const;

 private:
  const SimilarityGraph* graph_;
  std::vector<std::vector<double>> cumulative_;
};

// num_walks walks per node; walk r from node v draws from
// Rng(MixSeed(seed, v, r)). The corpus lists node 0's walks first.
WalkCorpus GenerateWalks(const SimilarityGraph& g, int num_walks,
                         int walk_length, std::uint64_t seed);

// (center, context) pairs within +-window, in walk order.
std::vector<std::pair<int, int>> ContextPairs(const Walk& walk, int window);

// Skip-gram with negative sampling over a unigram^0.75 noise distribution
// and a linearly decaying learning rate. Returns the n x dim input vectors.
Eigen::MatrixXd TrainSkipgram(const WalkCorpus& corpus, int node_count,
                              const DeepWalkParams& params, std::uint64_t seed);

// Walks plus skip-gram: the node feature matrix X.
Eigen::MatrixXd NodeFeatures(const SimilarityGraph& g,
                             const DeepWalkParams& params, std::uint64_t seed);

}  // namespace clustrec
