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

#include "clustrec/evaluation.hpp"

#include <algorithm>
#include <limits>

#include "clustrec/baselines.hpp"
#include "clustrec/error.hpp"
#include "clustrec/parallel.hpp"

namespace clustrec {

double Src(std::span<const double> actual, std::span<const double> predicted) {
  if (actual.size() != predicted.size()) {
    throw Error(ErrorCode::kLengthMismatch, "SRC of rankings with different lengths");
  }
  if (actual.size() < 2) {
    throw Error(ErrorCode::kInvalidParams, "SRC needs at least two items");
  }
  const auto n = static_cast<double>(actual.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < actual.size(); ++i) {
    const double d = actual[i] - predicted[i];
    sum += d * d;
  }
  return 1.0 - 6.0 * sum / (n * n * n - n);
}

FoldResult MakeFoldResult(const PerformanceTable& table, std::size_t d,
                          const std::vector<std::string>& predicted) {
  FoldResult f;
  f.dataset = table.datasets[d];
  f.predicted = predicted;
  const std::size_t na = table.num_algorithms();
  if (predicted.size() != na) {
    throw Error(ErrorCode::kLengthMismatch, "prediction does not list every algorithm");
  }
  std::vector<double> actual(na), position(na, 0.0);
  for (std::size_t p = 0; p < na; ++p) {
    const auto it = std::find(table.algorithms.begin(), table.algorithms.end(),
                              predicted[p]);
    if (it == table.algorithms.end() || position[it - table.algorithms.begin()] != 0.0) {
      throw Error(ErrorCode::kInvalidParams, "prediction is not a permutation");
    }
    const auto a = static_cast<std::size_t>(it - table.algorithms.begin());
    position[a] = static_cast<double>(p + 1);
    f.actual_by_position.push_back(table.ranks[d][a]);
  }
  for (std::size_t a = 0; a < na; ++a) actual[a] = table.ranks[d][a];
  f.src = Src(actual, position);
  const double top = *std::min_element(actual.begin(), actual.end());
  for (std::size_t p = 0; p < na; ++p) {
    if (f.actual_by_position[p] == top) {
      f.reciprocal_rank = 1.0 / static_cast<double>(p + 1);
      break;
    }
  }
  return f;
}

namespace {
template <typename Fn>
double MeanOver(std::span<const FoldResult> folds, Fn&& fn) {
  double sum = 0.0;
  int count = 0;
  for (const auto& f : folds) {
    if (!f.error.empty()) continue;
    sum += fn(f);
    ++count;
  }
  return count > 0 ? sum / count : 0.0;
}
}  // namespace

double Mrr(std::span<const FoldResult> folds) {
  return MeanOver(folds, [](const FoldResult& f) { return f.reciprocal_rank; });
}

double MeanSrc(std::span<const FoldResult> folds) {
  return MeanOver(folds, [](const FoldResult& f) { return f.src; });
}

double MrrAtK(std::span<const FoldResult> folds, int k) {
  return MeanOver(folds, [k](const FoldResult& f) {
    const auto& r = f.actual_by_position;
    if (k < 1 || k > static_cast<int>(r.size())) {
      throw Error(ErrorCode::kInvalidParams, "MRR@K needs 1 <= k <= |A|");
    }
    double best = std::numeric_limits<double>::infinity();
    for (int p = 0; p < k; ++p) {
      double min_rank = 1.0;
      for (double other : r) min_rank += other < r[p] ? 1.0 : 0.0;
      best = std::min(best, min_rank);
    }
    return 1.0 / best;
  });
}

double RandomRankingMrr(int count) {
  double sum = 0.0;
  for (int i = 1; i <= count; ++i) sum += 1.0 / i;
  return sum / count;
}

std::uint64_t GroupsHash(std::vector<std::string> names) {
  std::sort(names.begin(), names.end());
  std::uint64_t h = HashString("groups");
  for (const auto& n : names) h = MixSeed(h, HashString(n));
  return h;
}

FoldResult LeaveOneOutFold(const PerformanceTable& table,
                           const FeatureMap& features, std::size_t i,
                           const LooOptions& options, RankerModel* model) {
  const std::string& held = table.datasets[i];
  std::vector<MetaInstance> train;
  std::vector<std::string> groups;
  FoldResult fold;
  try {
    for (auto& inst : AssembleTrainingSet(features, table)) {
      if (inst.group == held) continue;
      if (groups.empty() || groups.back() != inst.group) groups.push_back(inst.group);
      train.push_back(std::move(inst));
    }
    RankerModel trained = TrainRanker(std::move(train), options.ranker);
    const auto rec = Recommend(trained, features.at(held), table.algorithms);
    std::vector<std::string> order;
    for (const auto& e : rec.entries) order.push_back(e.algorithm);
    fold = MakeFoldResult(table, i, order);
    if (model) *model = std::move(trained);
  } catch (const Error& e) {
    fold.dataset = held;
    fold.error = e.what();
  }
  fold.train_groups = static_cast<int>(groups.size());
  fold.train_groups_hash = GroupsHash(groups);
  return fold;
}

std::vector<FoldResult> LeaveOneOut(const PerformanceTable& table,
                                    const FeatureMap& features,
                                    const LooOptions& options,
                                    std::vector<RankerModel>* models) {
  const std::size_t nd = table.num_datasets();
  if (nd < 3) {
    throw Error(ErrorCode::kTooFewSamples, "leave-one-out needs >= 3 datasets");
  }
  std::vector<FoldResult> folds(nd);
  if (models) models->assign(nd, RankerModel{});
  ParallelFor(nd, options.jobs, [&](std::size_t i) {
    folds[i] = LeaveOneOutFold(table, features, i, options,
                               models ? &(*models)[i] : nullptr);
  });
  return folds;
}

std::vector<FoldResult> LeaveOneOutPopularity(const PerformanceTable& table) {
  const std::size_t nd = table.num_datasets();
  std::vector<FoldResult> folds;
  for (std::size_t i = 0; i < nd; ++i) {
    std::vector<std::size_t> rows;
    std::vector<std::string> groups;
    for (std::size_t d = 0; d < nd; ++d) {
      if (d == i) continue;
      rows.push_back(d);
      groups.push_back(table.datasets[d]);
    }
    const PopularityVector pop = PopularityRank(table, rows);
    FoldResult f = MakeFoldResult(table, i, pop.order);
    f.train_groups = static_cast<int>(groups.size());
    f.train_groups_hash = GroupsHash(groups);
    folds.push_back(std::move(f));
  }
  return folds;
}

}  // namespace clustrec
