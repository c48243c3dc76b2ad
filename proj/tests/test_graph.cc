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

#include "clustrec/error.hpp"
#include "clustrec/graph.hpp"
#include "support.hpp"

using namespace clustrec;

TEST_CASE("pca keeps enough variance with orthonormal directions") {
  Rng rng(3);
  NumericDataset d = testing::UniformDataset(30, 5, 11);
  // Make column 4 nearly a copy of column 0.
  for (int i = 0; i < 30; ++i) d.matrix(i, 4) = 0.98 * d.matrix(i, 0) + 0.01 * rng.Uniform();
  for (bool wide : {false, true}) {
    NumericDataset in = d;
    if (wide) in = testing::UniformDataset(4, 9, 12);
    const ReducedDataset r = PcaReduce(in, 0.9);
    const int q = static_cast<int>(r.components.cols());
    REQUIRE(q >= 1);
    const Eigen::MatrixXd gram = r.components.transpose() * r.components;
    CHECK((gram - Eigen::MatrixXd::Identity(q, q)).cwiseAbs().maxCoeff() < 1e-9);
    const Eigen::MatrixXd centred = in.matrix.rowwise() - in.matrix.colwise().mean();
    CHECK((centred * r.components - r.matrix).cwiseAbs().maxCoeff() < 1e-9);
    // Explained variance fractions against the covariance spectrum.
    const Eigen::MatrixXd cov = centred.transpose() * centred / (in.n() - 1.0);
    const double total = cov.trace();
    double kept = 0;
    for (int c = 0; c < q; ++c) {
      const double v = r.components.col(c).dot(cov * r.components.col(c));
      kept += v / total;
    }
    CHECK(kept >= 0.9 - 1e-9);
    double without_last = 0;
    for (int c = 0; c + 1 < q; ++c) {
      without_last += r.components.col(c).dot(cov * r.components.col(c)) / total;
    }
    CHECK(without_last < 0.9);
    for (int c = 0; c < q; ++c) {
      Eigen::Index at;
      r.components.col(c).cwiseAbs().maxCoeff(&at);
      CHECK(r.components(at, c) > 0);
    }
  }
  CHECK(PcaReduce(d, 0.9).components.cols() < 5);
}

TEST_CASE("pca off passes through") {
  const NumericDataset d = testing::UniformDataset(10, 3, 4);
  const ReducedDataset r = PcaReduce(d, 0.9, false);
  CHECK(r.matrix == d.matrix);
  CHECK(r.explained_variance.empty());
}

TEST_CASE("cosine similarity") {
  Eigen::RowVectorXd u(3), v(3), z = Eigen::RowVectorXd::Zero(3);
  u << 1, 0, 0;
  v << 1, 1, 0;
  CHECK(CosineSimilarity(u, v) == doctest::Approx(1 / std::sqrt(2.0)));
  CHECK(CosineSimilarity(u, z) == 0.0);
  CHECK(CosineSimilarity(u, -u) == doctest::Approx(-1));
}

TEST_CASE("graph edges match a pairwise scan") {
  Rng rng(8);
  for (int trial = 0; trial < 5; ++trial) {
    const NumericDataset d = testing::UniformDataset(25, 4, 20 + trial);
    const ReducedDataset r = PcaReduce(d, 0.9);
    const double threshold = 0.5 + 0.1 * trial;
    const SimilarityGraph g = BuildSimilarityGraph(r, threshold);
    std::vector<Edge> expected;
    for (int i = 0; i < 25; ++i) {
      for (int j = i + 1; j < 25; ++j) {
        const Eigen::RowVectorXd a = r.matrix.row(i), b = r.matrix.row(j);
        const double s = a.dot(b) / (a.norm() * b.norm());
        if (s > threshold) expected.push_back({i, j, s});
      }
    }
    REQUIRE(g.edges().size() == expected.size());
    for (std::size_t e = 0; e < expected.size(); ++e) {
      CHECK(g.edges()[e].i == expected[e].i);
      CHECK(g.edges()[e].j == expected[e].j);
      CHECK(g.edges()[e].w == doctest::Approx(expected[e].w).epsilon(1e-12));
    }
    const Eigen::MatrixXd z = g.Dense();
    CHECK(z == z.transpose());
    CHECK(z.diagonal().isZero());
    const SimilarityGraph back = SimilarityGraph::Parse(g.Serialize());
    CHECK(back.edges() == g.edges());
    CHECK(back.node_count() == 25);
    CHECK(back.threshold() == threshold);
  }
}

TEST_CASE("adjacency lists") {
  const SimilarityGraph g(4, 0.9, {{0, 2, 0.95}, {1, 2, 0.91}});
  CHECK(g.adjacency(2).size() == 2);
  CHECK(g.adjacency(2)[0].first == 0);
  CHECK(g.adjacency(3).empty());
  CHECK(g.weight(2, 1) == 0.91);
  CHECK(g.weight(0, 3) == 0.0);
  CHECK_THROWS_AS(SimilarityGraph::Parse("garbage"), Error);
}
