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

#include "doctest.h"

#include "clustrec/error.hpp"
#include "clustrec/ranker.hpp"
#include "support.hpp"

using namespace clustrec;

namespace {

// Datasets whose first meta-feature names the winning ordinal; the others
// are noise. Relevance falls with the circular distance from the winner.
std::vector<MetaInstance> Synthetic(int groups, int algorithms, Rng& rng) {
  std::vector<MetaInstance> out;
  for (int g = 0; g < groups; ++g) {
    const int best = static_cast<int>(rng.UniformInt(algorithms));
    Eigen::RowVectorXd meta(3);
    meta << best, rng.Uniform(), rng.Uniform();
    for (int a = 0; a < algorithms; ++a) {
      MetaInstance m;
      m.features = InstanceFeatures(meta, a);
      const int dist = std::abs(a - best);
      m.relevance = algorithms - dist;
      m.group = "g" + std::to_string(g);
      m.ordinal = a;
      out.push_back(m);
    }
  }
  return out;
}

}  // namespace

TEST_CASE("instance features append the ordinal") {
  Eigen::RowVectorXd meta(2);
  meta << 0.5, 0.25;
  const Eigen::RowVectorXd f = InstanceFeatures(meta, 3);
  REQUIRE(f.size() == 3);
  CHECK(f(2) == 3.0);
}

TEST_CASE("training set assembly") {
  PerformanceTable t;
  t.measure = "Silhouette";
  t.datasets = {"a", "b"};
  t.algorithms = {"SL", "KM", "DBSCAN"};
  t.scores = {{0.1, 0.3, 0.2}, {0.9, 0.1, 0.1}};
  t.Rerank(Orientation::kMaximize);
  FeatureMap fm;
  fm["a"] = Eigen::RowVectorXd::Constant(2, 1.0);
  fm["b"] = Eigen::RowVectorXd::Constant(2, 2.0);
  const auto set = AssembleTrainingSet(fm, t);
  REQUIRE(set.size() == 6);
  CHECK(set[0].group == "a");
  CHECK(set[1].relevance == 3.0);   // KM is best on a
  CHECK(set[4].relevance == 1.5);   // KM and DBSCAN tie for 2.5 on b
  CHECK(set[5].features(0) == 2.0);
  CHECK(set[5].features(2) == FindAlgorithm("DBSCAN").ordinal);
  fm.erase("b");
  try {
    AssembleTrainingSet(fm, t);
    FAIL("expected MissingEmbedding");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kMissingEmbedding);
  }
}

TEST_CASE("ranker learns a perfect signal") {
  Rng rng(4);
  const auto train = Synthetic(40, 6, rng);
  RankerConfig config;
  config.trees = 100;
  const RankerModel model = TrainRanker(train, config);
  int hits = 0;
  for (int best = 0; best < 6; ++best) {
    Eigen::RowVectorXd meta(3);
    meta << best, 0.5, 0.5;
    const std::vector<std::string> algs = {"A0", "A1", "A2", "A3", "A4", "A5"};
    const auto rec = Recommend(model, meta, algs, "new", "m");
    hits += rec.entries.front().ordinal == best;
    CHECK(rec.entries.size() == 6);
    CHECK(rec.dataset == "new");
  }
  CHECK(hits >= 5);
}

TEST_CASE("one depth-1 tree matches a brute-force split search") {
  // Two groups of three; only feature 0 separates the winners.
  std::vector<MetaInstance> in;
  const double f0[2][3] = {{0.9, 0.2, 0.4}, {0.1, 0.8, 0.3}};
  const double rel[2][3] = {{3, 1, 2}, {1, 3, 2}};
  for (int g = 0; g < 2; ++g) {
    for (int a = 0; a < 3; ++a) {
      Eigen::RowVectorXd meta(1);
      meta << f0[g][a];
      in.push_back({InstanceFeatures(meta, a), rel[g][a], "g" + std::to_string(g), a});
    }
  }
  // First round: all scores 0, so every pair contributes gradient 1/2 and
  // curvature 1/4 to both of its members.
  std::vector<double> grad(6, 0.0), hess(6, 0.0);
  for (int i = 0; i < 6; ++i) {
    for (int j = 0; j < 6; ++j) {
      if (in[i].group == in[j].group && in[i].relevance > in[j].relevance) {
        grad[i] += 0.5;
        grad[j] -= 0.5;
        hess[i] += 0.25;
        hess[j] += 0.25;
      }
    }
  }
  int best_f = -1;
  double best_t = 0, best_sse = 0;
  for (int f = 0; f < 2; ++f) {
    for (int i = 0; i < 6; ++i) {
      for (int j = 0; j < 6; ++j) {
        const double a = in[i].features(f), b = in[j].features(f);
        if (!(a < b)) continue;
        bool between = false;
        for (int k = 0; k < 6; ++k) {
          between |= in[k].features(f) > a && in[k].features(f) < b;
        }
        if (between) continue;
        const double t = a + (b - a) / 2.0;
        double ls = 0, rs = 0, ln = 0, rn = 0;
        for (int k = 0; k < 6; ++k) {
          (in[k].features(f) <= t ? ls : rs) += grad[k];
          (in[k].features(f) <= t ? ln : rn) += 1;
        }
        const double sse_gain = ls * ls / ln + rs * rs / rn;
        if (best_f < 0 || sse_gain > best_sse + 1e-12 ||
            (std::abs(sse_gain - best_sse) <= 1e-12 && f == best_f && t < best_t)) {
          best_f = f;
          best_t = t;
          best_sse = sse_gain;
        }
      }
    }
  }
  RankerConfig config;
  config.trees = 1;
  config.depth = 1;
  const RankerModel model = TrainRanker(in, config);
  REQUIRE(model.trees.size() == 1);
  const auto& nodes = model.trees[0].nodes;
  REQUIRE(nodes.size() == 3);
  CHECK(nodes[0].feature == best_f);
  CHECK(nodes[0].threshold == doctest::Approx(best_t).epsilon(1e-12));
  double lg = 0, lh = 0, rg = 0, rh = 0;
  for (int k = 0; k < 6; ++k) {
    const bool left = in[k].features(best_f) <= best_t;
    (left ? lg : rg) += grad[k];
    (left ? lh : rh) += hess[k];
  }
  CHECK(nodes[nodes[0].left].value == doctest::Approx(lg / lh).epsilon(1e-12));
  CHECK(nodes[nodes[0].right].value == doctest::Approx(rg / rh).epsilon(1e-12));
  // The dominant pair of each group comes out ordered.
  CHECK(model.Score(in[0].features) > model.Score(in[1].features));
  CHECK(model.Score(in[4].features) > model.Score(in[3].features));
}

TEST_CASE("input order does not matter and models round trip") {
  Rng rng(8);
  auto train = Synthetic(10, 4, rng);
  RankerConfig config;
  config.trees = 20;
  const RankerModel a = TrainRanker(train, config);
  std::reverse(train.begin(), train.end());
  const RankerModel b = TrainRanker(train, config);
  CHECK(a.Serialize() == b.Serialize());
  const RankerModel c = RankerModel::Parse(a.Serialize());
  CHECK(c.Serialize() == a.Serialize());
  for (const auto& inst : train) CHECK(c.Score(inst.features) == a.Score(inst.features));
  for (int f : a.SplitFeatures()) {
    CHECK(f >= 0);
    CHECK(f < a.feature_count);
  }
  CHECK_THROWS_AS(RankerModel::Parse("nope"), Error);
}

TEST_CASE("ties in score keep ordinal order") {
  RankerModel empty;
  empty.feature_count = 2;
  const std::vector<std::string> algs = {"X", "Y", "Z"};
  const auto rec = Recommend(empty, Eigen::RowVectorXd::Zero(1), algs);
  CHECK(rec.entries[0].algorithm == "X");
  CHECK(rec.entries[2].algorithm == "Z");
}

TEST_CASE("degenerate training data") {
  RankerConfig config;
  std::vector<MetaInstance> flat;
  for (int a = 0; a < 3; ++a) {
    flat.push_back({Eigen::RowVectorXd::Constant(2, a), 1.0, "g", a});
  }
  CHECK_THROWS_AS(TrainRanker(flat, config), Error);
  RankerConfig bad;
  bad.depth = 0;
  CHECK_THROWS_AS(bad.Validate(), Error);
}
