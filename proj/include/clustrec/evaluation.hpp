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
#include <span>
#include <string>
#include <vector>

#include "clustrec/performance.hpp"
#include "clustrec/ranker.hpp"

namespace clustrec {

// 1 - 6 sum (a_i - p_i)^2 / (n^3 - n), fractional ranks allowed.
double Src(std::span<const double> actual, std::span<const double> predicted);

struct FoldResult {
  std::string dataset;
  std::vector<std::string> predicted;    // algorithm names, best first
  std::vector<double> actual_by_position;  // actual rank of predicted[p]
  double src = 0.0;
  double reciprocal_rank = 0.0;
  std::uint64_t train_groups_hash = 0;  // over the sorted training dataset names
  int train_groups = 0;
  std::string error;  // non-empty when the fold failed
};

// Scores one predicted order against row `d` of the table. rank_i is the
// best predicted position among the algorithms that share the best actual
// rank.
FoldResult MakeFoldResult(const PerformanceTable& table, std::size_t d,
                          const std::vector<std::string>& predicted);

// Means over folds without an error.
double Mrr(std::span<const FoldResult> folds);
double MeanSrc(std::span<const FoldResult> folds);
// Per dataset: 1 / (best min-rank among the top-k predictions), where the
// min-rank of an algorithm is 1 + the number of algorithms strictly ahead of
// it in the actual ranking.
double MrrAtK(std::span<const FoldResult> folds, int k);

// Expected MRR of a uniformly random ranking of `count` algorithms.
double RandomRankingMrr(int count);

std::uint64_t GroupsHash(std::vector<std::string> names);

struct LooOptions {
  RankerConfig ranker;
  int jobs = 1;
};

// Fold i alone: trained on every row of `features` except dataset i's.
// Training errors are recorded in the result.
FoldResult LeaveOneOutFold(const PerformanceTable& table,
                           const FeatureMap& features, std::size_t i,
                           const LooOptions& options, RankerModel* model = nullptr);

// Ranker trained on every dataset but one, tested on the held-out one.
// `models`, when given, receives the model of every fold.
std::vector<FoldResult> LeaveOneOut(const PerformanceTable& table,
                                    const FeatureMap& features,
                                    const LooOptions& options,
                                    std::vector<RankerModel>* models = nullptr);

// Popularity counted over the training folds only.
std::vector<FoldResult> LeaveOneOutPopularity(const PerformanceTable& table);

}  // namespace clustrec
