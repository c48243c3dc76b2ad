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

#include <algorithm>
#include <numeric>

#include "doctest.h"

#include "clustrec/error.hpp"
#include "clustrec/evaluation.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace clustrec;

namespace {

PerformanceTable OneRow(const std::vector<std::optional<double>>& scores) {
  PerformanceTable t;
  t.measure = "Silhouette";
  t.datasets = {"d"};
  for (std::size_t a = 0; a < scores.size(); ++a) t.algorithms.push_back("A" + std::to_string(a));
  t.scores = {scores};
  t.params = {std::vector<std::string>(scores.size(), "-")};
  t.Rerank(Orientation::kMaximize);
  return t;
}

std::vector<std::string> Names(const std::vector<int>& order) {
  std::vector<std::string> out;
  for (int a : order) out.push_back("A" + std::to_string(a));
  return out;
}

}  // namespace

TEST_CASE("SRC examples") {
  const std::vector<double> a = {1, 2, 3, 4};
  CHECK(Src(a, a) == 1.0);
  const std::vector<double> rev = {4, 3, 2, 1};
  CHECK(Src(a, rev) == -1.0);
  const std::vector<double> swap = {2, 1, 3, 4};
  CHECK(Src(a, swap) == doctest::Approx(1 - 6.0 * 2 / 60));
  CHECK_THROWS_AS(Src(a, std::vector<double>{1, 2}), Error);
}

TEST_CASE("fold results against oracles") {
  Rng rng(6);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + static_cast<int>(rng.UniformInt(10));
    std::vector<std::optional<double>> scores(n);
    for (auto& s : scores) s = std::round(rng.Uniform() * 4);  // plenty of ties
    const PerformanceTable t = OneRow(scores);
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    rng.Shuffle(order);
    const FoldResult f = MakeFoldResult(t, 0, Names(order));
    std::vector<double> position(n);
    for (int p = 0; p < n; ++p) position[order[p]] = p + 1;
    const double src = 1 - 6 * [&] {
      double s = 0;
      for (int i = 0; i < n; ++i) s += (t.ranks[0][i] - position[i]) * (t.ranks[0][i] - position[i]);
      return s;
    }() / (std::pow(n, 3) - n);
    CHECK(f.src == doctest::Approx(src).epsilon(1e-12));
    CHECK(f.reciprocal_rank == oracle::ReciprocalRank(t.ranks[0], order));
  }
}

TEST_CASE("MRR and MRR@K") {
  const PerformanceTable t = OneRow({0.9, 0.5, 0.9, 0.1});
  // A0 and A2 tie for the best rank 1.5.
  const FoldResult f = MakeFoldResult(t, 0, Names({1, 2, 0, 3}));
  CHECK(f.reciprocal_rank == 0.5);
  const std::vector<FoldResult> folds = {f};
  CHECK(MrrAtK(folds, 1) == doctest::Approx(1.0 / 3.0));
  CHECK(MrrAtK(folds, 2) == 1.0);
  CHECK(MrrAtK(folds, 4) == 1.0);
  CHECK_THROWS_AS(MrrAtK(folds, 5), Error);
  FoldResult a, b, c, failed;
  a.reciprocal_rank = 1;
  b.reciprocal_rank = 1;
  c.reciprocal_rank = 0.5;
  failed.reciprocal_rank = 0;
  failed.error = "x";
  const std::vector<FoldResult> many = {a, b, c, failed};
  CHECK(Mrr(many) == doctest::Approx(0.83333333333333).epsilon(1e-12));
}

TEST_CASE("random ranking expectation") {
  CHECK(RandomRankingMrr(1) == 1.0);
  CHECK(RandomRankingMrr(8) == doctest::Approx(2.717857142857143 / 8));
  CHECK(RandomRankingMrr(8) == doctest::Approx(0.34).epsilon(0.01));
}

TEST_CASE("bad predictions") {
  const PerformanceTable t = OneRow({0.1, 0.2, 0.3});
  CHECK_THROWS_AS(MakeFoldResult(t, 0, Names({0, 1})), Error);
  CHECK_THROWS_AS(MakeFoldResult(t, 0, Names({0, 1, 1})), Error);
  CHECK_THROWS_AS(MakeFoldResult(t, 0, {"A0", "A1", "Q"}), Error);
}

TEST_CASE("leave-one-out folds") {
  PerformanceTable t;
  t.measure = "Silhouette";
  t.algorithms = {"A0", "A1", "A2"};
  FeatureMap fm;
  Rng rng(2);
  for (int d = 0; d < 6; ++d) {
    const std::string name = "d" + std::to_string(d);
    t.datasets.push_back(name);
    std::vector<std::optional<double>> row(3, 0.0);
    row[d % 3] = 1.0;
    t.scores.push_back(row);
    Eigen::RowVectorXd meta(2);
    meta << d % 3, rng.Uniform();
    fm[name] = meta;
  }
  t.params.assign(6, std::vector<std::string>(3, "-"));
  t.Rerank(Orientation::kMaximize);
  LooOptions opt;
  opt.ranker.trees = 30;
  std::vector<RankerModel> models;
  const auto folds = LeaveOneOut(t, fm, opt, &models);
  REQUIRE(folds.size() == 6);
  REQUIRE(models.size() == 6);
  for (std::size_t i = 0; i < 6; ++i) {
    CHECK(folds[i].error.empty());
    CHECK(folds[i].dataset == t.datasets[i]);
    CHECK(folds[i].train_groups == 5);
    std::vector<std::string> rest;
    for (std::size_t j = 0; j < 6; ++j) {
      if (j != i) rest.push_back(t.datasets[j]);
    }
    CHECK(folds[i].train_groups_hash == GroupsHash(rest));
    CHECK(GroupsHash(rest) != GroupsHash(t.datasets));
  }
  CHECK(Mrr(folds) >= 0.5);
  opt.jobs = 3;
  const auto again = LeaveOneOut(t, fm, opt);
  for (std::size_t i = 0; i < 6; ++i) CHECK(again[i].predicted == folds[i].predicted);

  const auto pop = LeaveOneOutPopularity(t);
  REQUIRE(pop.size() == 6);
  // Without d0 the remaining winners are A1, A2, A0, A1, A2: A1 first.
  CHECK(pop[0].predicted.front() == "A1");
  CHECK(pop[0].train_groups == 5);

  PerformanceTable tiny = t;
  tiny.datasets.resize(2);
  tiny.scores.resize(2);
  tiny.params.resize(2);
  tiny.Rerank(Orientation::kMaximize);
  try {
    LeaveOneOut(tiny, fm, opt);
    FAIL("expected TooFewSamples");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kTooFewSamples);
  }
}

TEST_CASE("failed folds are recorded") {
  PerformanceTable t;
  t.measure = "m";
  t.algorithms = {"A0", "A1"};
  t.datasets = {"a", "b", "c"};
  t.scores = {{1.0, 0.0}, {0.0, 1.0}, {1.0, 0.0}};
  t.params.assign(3, std::vector<std::string>(2, "-"));
  t.Rerank(Orientation::kMaximize);
  FeatureMap fm;
  fm["a"] = Eigen::RowVectorXd::Zero(1);
  fm["b"] = Eigen::RowVectorXd::Zero(1);
  const auto folds = LeaveOneOut(t, fm, LooOptions{});
  for (const auto& f : folds) CHECK_FALSE(f.error.empty());
  CHECK(Mrr(folds) == 0.0);
}
