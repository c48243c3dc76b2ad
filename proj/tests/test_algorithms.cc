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

#include <map>

#include "doctest.h"

#include <set>

#include "clustrec/algorithms.hpp"
#include "clustrec/error.hpp"
#include "index_oracles.hpp"
#include "support.hpp"

using namespace clustrec;

namespace {

NumericDataset Column(const std::vector<double>& v) {
  NumericDataset d;
  d.name = "col";
  d.matrix.resize(static_cast<Eigen::Index>(v.size()), 1);
  for (std::size_t i = 0; i < v.size(); ++i) d.matrix(i, 0) = v[i];
  d.feature_names = {"x"};
  return d;
}

ParamPoint K(int k) {
  ParamPoint p;
  p.k = k;
  return p;
}

bool Dense(const ClusteringSolution& s) {
  std::set<int> seen;
  for (int l : s.labels) {
    if (l < -1 || l >= s.k_effective) return false;
    if (l >= 0) seen.insert(l);
  }
  return static_cast<int>(seen.size()) == s.k_effective;
}

}  // namespace

TEST_CASE("capability table") {
  const auto all = SupportedAlgorithms();
  REQUIRE(all.size() >= 15);
  for (std::size_t i = 0; i < all.size(); ++i) CHECK(all[i].ordinal == static_cast<int>(i));
  CHECK(FindAlgorithm("SL").deterministic);
  CHECK(FindAlgorithm("SL").needs_k);
  CHECK_FALSE(FindAlgorithm("KM").deterministic);
  CHECK_FALSE(FindAlgorithm("DBSCAN").needs_k);
  CHECK(FindAlgorithm("DBSCAN").density_based);
  CHECK(CapabilityTable().find("GMD") != std::string::npos);
  CHECK_THROWS_AS(FindAlgorithm("EAC"), Error);
}

TEST_CASE("k-means splits two obvious groups") {
  const auto d = Column({0.0, 0.01, 0.99, 1.0});
  const auto s = RunAlgorithm(d, "KM", K(2), 3);
  CHECK(s.labels[0] == s.labels[1]);
  CHECK(s.labels[2] == s.labels[3]);
  CHECK(s.labels[0] != s.labels[2]);
}

TEST_CASE("single linkage cuts the largest gap") {
  const auto d = Column({0.0, 0.1, 0.2, 1.0});
  const auto s = RunAlgorithm(d, "SL", K(2), 0);
  CHECK(s.labels == std::vector<int>{0, 0, 0, 1});
}

TEST_CASE("dbscan with no core point") {
  const auto d = Column({0.0, 1.0});
  ParamPoint p;
  p.eps = 0.05;
  p.min_pts = 3;
  try {
    RunAlgorithm(d, "DBSCAN", p, 0);
    FAIL("expected AllNoise");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kAllNoise);
  }
}

TEST_CASE("every algorithm is reproducible and dense") {
  std::vector<int> truth;
  const NumericDataset d = testing::SeparatedBlobs(3, 15, 2, 11, &truth);
  const HyperparamGrid grid;
  for (const auto& info : SupportedAlgorithms()) {
    CAPTURE(info.name);
    const auto points = GridPoints(d, info, grid);
    REQUIRE_FALSE(points.empty());
    const ParamPoint p = info.needs_k ? K(3) : points.back();
    const auto a = RunAlgorithm(d, info.name, p, 99);
    const auto b = RunAlgorithm(d, info.name, p, 99);
    CHECK(a.labels == b.labels);
    CHECK(a.labels.size() == truth.size());
    CHECK(Dense(a));
    if (info.needs_k) CHECK(a.k_effective <= 3);
  }
}

TEST_CASE("invalid k") {
  const auto d = Column({0.0, 0.5, 1.0});
  CHECK_THROWS_AS(RunAlgorithm(d, "KM", K(0), 0), Error);
  CHECK_THROWS_AS(RunAlgorithm(d, "AL", K(4), 0), Error);
}

TEST_CASE("single linkage partitions are nested") {
  const NumericDataset d = testing::UniformDataset(40, 3, 5);
  for (int k = 2; k < 10; ++k) {
    const auto coarse = RunAlgorithm(d, "SL", K(k), 0);
    const auto fine = RunAlgorithm(d, "SL", K(k + 1), 0);
    // Every fine cluster sits inside one coarse cluster.
    std::map<int, int> parent;
    for (std::size_t i = 0; i < fine.labels.size(); ++i) {
      auto [it, fresh] = parent.emplace(fine.labels[i], coarse.labels[i]);
      CHECK(it->second == coarse.labels[i]);
    }
  }
}

TEST_CASE("tuning K on three blobs matches a brute-force silhouette search") {
  std::vector<int> truth;
  const NumericDataset d = testing::SeparatedBlobs(3, 20, 2, 17, &truth);
  HyperparamGrid grid;
  grid.k_min = 2;
  grid.k_max = 10;
  const TuneResult r = TuneK(d, "KM", IndexId::kSilhouette, grid, 3, 123);
  CHECK(r.params.k == 3);

  // Independent search: the oracle silhouette averaged over the same runs.
  double best = -2.0;
  int best_k = 0;
  for (int k = 2; k <= 10; ++k) {
    double mean = 0.0;
    for (int rep = 0; rep < 3; ++rep) {
      const auto s = RunAlgorithm(d, "KM", K(k), MixSeed(123, rep));
      mean += oracle::Silhouette(oracle::DropNoise(d.matrix, s.labels));
    }
    mean /= 3;
    if (mean > best) {
      best = mean;
      best_k = k;
    }
  }
  CHECK(best_k == 3);
  CHECK(r.score == doctest::Approx(best).epsilon(1e-12));
}

TEST_CASE("deterministic algorithms score identically across repeats") {
  const NumericDataset d = testing::UniformDataset(30, 2, 8);
  HyperparamGrid grid;
  grid.k_min = grid.k_max = 4;
  const auto once = TuneK(d, "AL", IndexId::kSilhouette, grid, 1, 1);
  const auto many = TuneK(d, "AL", IndexId::kSilhouette, grid, 10, 2);
  CHECK(once.score == many.score);
  CHECK(once.params.k == 4);
}

TEST_CASE("singleton grid") {
  const NumericDataset d = testing::UniformDataset(25, 2, 9);
  HyperparamGrid grid;
  grid.k_min = grid.k_max = 2;
  CHECK(TuneK(d, "WL", IndexId::kDaviesBouldin, grid, 1, 0).params.k == 2);
}

TEST_CASE("param point text round trip") {
  ParamPoint p;
  p.eps = 0.125;
  p.min_pts = 5;
  CHECK(ParamPoint::Parse(p.ToString()) == p);
  CHECK(ParamPoint::Parse(K(7).ToString()) == K(7));
}

TEST_CASE("plugin registration") {
  struct Halves : Clusterer {
    Eigen::Index n = 0;
    void Prepare(const NumericDataset& d) override { n = d.n(); }
    ClusteringSolution Run(const ParamPoint&, std::uint64_t seed) const override {
      ClusteringSolution s;
      for (Eigen::Index i = 0; i < n; ++i) s.labels.push_back(i < n / 2 ? 0 : 1);
      s.seed = seed;
      Canonicalize(s);
      return s;
    }
  };
  AlgorithmInfo info;
  info.name = "HALVES";
  info.deterministic = true;
  info.needs_k = true;
  const AlgorithmInfo got =
      RegisterAlgorithm(info, [] { return std::make_unique<Halves>(); });
  CHECK(got.ordinal == static_cast<int>(SupportedAlgorithms().size()) - 1);
  const auto s = RunAlgorithm(testing::UniformDataset(10, 2, 1), "HALVES", K(2), 0);
  CHECK(s.k_effective == 2);
}
