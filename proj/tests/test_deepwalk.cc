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

#include "doctest.h"

#include "clustrec/deepwalk.hpp"
#include "clustrec/error.hpp"
#include "support.hpp"

using namespace clustrec;

namespace {

SimilarityGraph TwoCliques() {
  std::vector<Edge> edges;
  for (int base : {0, 5}) {
    for (int i = 0; i < 5; ++i) {
      for (int j = i + 1; j < 5; ++j) edges.push_back({base + i, base + j, 0.95});
    }
  }
  edges.push_back({4, 5, 0.91});
  return SimilarityGraph(10, 0.9, edges);
}

}  // namespace

TEST_CASE("transitions follow edge weights") {
  const SimilarityGraph g(3, 0.0, {{0, 1, 1.0}, {0, 2, 3.0}});
  const WalkSampler sampler(g);
  Rng rng(1);
  int to2 = 0;
  for (int s = 0; s < 20000; ++s) to2 += sampler.Step(0, rng) == 2;
  CHECK(to2 / 20000.0 == doctest::Approx(0.75).epsilon(0.02));
  CHECK(sampler.Step(1, rng) == 0);
}

TEST_CASE("walks stay on edges and are reproducible") {
  const SimilarityGraph g = TwoCliques();
  const WalkCorpus a = GenerateWalks(g, 3, 12, 77);
  const WalkCorpus b = GenerateWalks(g, 3, 12, 77);
  CHECK(a == b);
  CHECK(a != GenerateWalks(g, 3, 12, 78));
  REQUIRE(a.size() == 30);
  for (std::size_t w = 0; w < a.size(); ++w) {
    CHECK(a[w].front() == static_cast<int>(w / 3));
    CHECK(a[w].size() == 12);
    for (std::size_t s = 1; s < a[w].size(); ++s) CHECK(g.weight(a[w][s - 1], a[w][s]) > 0);
  }
}

TEST_CASE("isolated nodes give one-node walks") {
  const SimilarityGraph g(3, 0.9, {{0, 1, 0.95}});
  const WalkCorpus c = GenerateWalks(g, 2, 5, 1);
  CHECK(c[4] == Walk{2});
  CHECK(c[0].size() == 5);
}

TEST_CASE("context pairs") {
  const auto pairs = ContextPairs({7, 8, 9}, 1);
  const std::vector<std::pair<int, int>> expected = {{7, 8}, {8, 7}, {8, 9}, {9, 8}};
  CHECK(pairs == expected);
  CHECK(ContextPairs({7, 8, 9}, 5).size() == 6);
}

TEST_CASE("skip-gram separates communities") {
  const SimilarityGraph g = TwoCliques();
  DeepWalkParams p;
  p.dim = 16;
  p.num_walks = 20;
  p.walk_length = 20;
  const Eigen::MatrixXd x = NodeFeatures(g, p, 3);
  CHECK(x.rows() == 10);
  CHECK(x.cols() == 16);
  CHECK(x == NodeFeatures(g, p, 3));
  auto cos = [&](int i, int j) {
    return x.row(i).dot(x.row(j)) / (x.row(i).norm() * x.row(j).norm());
  };
  double within = 0, across = 0;
  int nw = 0, na = 0;
  for (int i = 0; i < 10; ++i) {
    for (int j = i + 1; j < 10; ++j) {
      if ((i < 5) == (j < 5)) {
        within += cos(i, j);
        ++nw;
      } else {
        across += cos(i, j);
        ++na;
      }
    }
  }
  CHECK(within / nw > across / na);
}

TEST_CASE("invalid parameters") {
  DeepWalkParams p;
  p.dim = 0;
  CHECK_THROWS_AS(p.Validate(), Error);
  CHECK_THROWS_AS(GenerateWalks(SimilarityGraph(), 1, 1, 0), Error);
  CHECK_FALSE(DeepWalkParams{}.ToString().empty());
}
