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
#include "clustrec/indices.hpp"
#include "index_oracles.hpp"
#include "support.hpp"

using namespace clustrec;

namespace {

double Oracle(IndexId id, const oracle::Labelled& l) {
  switch (id) {
    case IndexId::kBezdekPal: return oracle::BezdekPal(l);
    case IndexId::kDunn: return oracle::Dunn(l);
    case IndexId::kCalinskiHarabasz: return oracle::CalinskiHarabasz(l);
    case IndexId::kSilhouette: return oracle::Silhouette(l);
    case IndexId::kMilliganCooper: return oracle::MilliganCooper(l);
    case IndexId::kDaviesBouldin: return oracle::DaviesBouldin(l);
    case IndexId::kHandlKnowlesKell: return oracle::Connectivity(l);
    case IndexId::kHubertLevin: return oracle::CIndex(l);
    case IndexId::kSDScat: return oracle::SDScat(l);
    case IndexId::kXieBeni: return oracle::XieBeni(l);
  }
  return 0.0;
}

// Random labelling with every cluster of size >= 2 and optional noise.
std::vector<int> RandomLabels(int n, int k, bool noise, Rng& rng) {
  std::vector<int> y(n);
  for (int i = 0; i < n; ++i) y[i] = i < 2 * k ? i / 2 : static_cast<int>(rng.UniformInt(k));
  if (noise) {
    for (int i = 2 * k; i < n; ++i) {
      if (rng.Uniform() < 0.15) y[i] = -1;
    }
  }
  rng.Shuffle(y);
  return y;
}

}  // namespace

TEST_CASE("indices match brute-force definitions") {
  Rng rng(2024);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 12 + static_cast<int>(rng.UniformInt(20));
    const int m = 1 + static_cast<int>(rng.UniformInt(4));
    const int k = 2 + static_cast<int>(rng.UniformInt(4));
    const NumericDataset d = testing::UniformDataset(n, m, 100 + trial);
    const auto labels = RandomLabels(n, k, trial % 3 == 0, rng);
    const IndexContext ctx(d);
    const oracle::Labelled l = oracle::DropNoise(d.matrix, labels);
    for (IndexId id : AllIndices()) {
      CAPTURE(IndexName(id));
      CAPTURE(trial);
      const IndexScore s = ComputeIndex(ctx, labels, id);
      REQUIRE(s.defined);
      const double expected = Oracle(id, l);
      if (id == IndexId::kHandlKnowlesKell) {
        // Random continuous data has no distance ties, so neighbour order is unique.
        CHECK(s.value == doctest::Approx(expected).epsilon(1e-12));
      } else {
        CHECK(s.value == doctest::Approx(expected).epsilon(1e-10));
      }
    }
  }
}

TEST_CASE("indices are invariant under relabelling") {
  Rng rng(7);
  const NumericDataset d = testing::UniformDataset(40, 3, 77);
  const IndexContext ctx(d);
  const auto labels = RandomLabels(40, 4, true, rng);
  const std::vector<int> perm = {2, 0, 3, 1};
  std::vector<int> relabelled;
  for (int l : labels) relabelled.push_back(l < 0 ? -1 : perm[l] + 10);
  for (IndexId id : AllIndices()) {
    CAPTURE(IndexName(id));
    const double a = ComputeIndex(ctx, labels, id).value;
    const double b = ComputeIndex(ctx, relabelled, id).value;
    CHECK(a == doctest::Approx(b).epsilon(1e-12));
  }
}

TEST_CASE("undefined cases") {
  const NumericDataset d = testing::UniformDataset(10, 2, 3);
  const std::vector<int> one(10, 0);
  std::vector<int> with_noise(10, 0);
  with_noise[0] = -1;
  with_noise[1] = 1;
  with_noise[1] = -1;
  for (IndexId id : AllIndices()) {
    CHECK_FALSE(ComputeIndex(d, one, id).defined);
    CHECK_FALSE(ComputeIndex(d, with_noise, id).defined);
  }
  std::vector<int> singletons(10);
  for (int i = 0; i < 10; ++i) singletons[i] = i;
  CHECK_FALSE(ComputeIndex(d, singletons, IndexId::kCalinskiHarabasz).defined);
  CHECK_FALSE(ComputeIndex(d, singletons, IndexId::kHubertLevin).defined);
  // A cluster of one point scores zero in the silhouette sum.
  CHECK(ComputeIndex(d, singletons, IndexId::kSilhouette).value == 0.0);
}

TEST_CASE("length mismatch") {
  const NumericDataset d = testing::UniformDataset(10, 2, 3);
  const std::vector<int> labels(9, 0);
  try {
    ComputeIndex(d, labels, IndexId::kDunn);
    FAIL("expected LengthMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kLengthMismatch);
  }
}

TEST_CASE("good partitions beat bad ones in the right direction") {
  std::vector<int> truth;
  const NumericDataset d = testing::SeparatedBlobs(3, 12, 2, 5, &truth);
  Rng rng(1);
  std::vector<int> shuffled = truth;
  rng.Shuffle(shuffled);
  const IndexContext ctx(d);
  for (IndexId id : AllIndices()) {
    CAPTURE(IndexName(id));
    const double good = ComputeIndex(ctx, truth, id).value;
    const double bad = ComputeIndex(ctx, shuffled, id).value;
    CHECK(Better(GetOrientation(id), good, bad));
  }
}

TEST_CASE("names round trip") {
  CHECK(AllIndices().size() == 10);
  for (IndexId id : AllIndices()) CHECK(ParseIndex(IndexName(id)) == id);
  CHECK_FALSE(ParseIndex("Rand").has_value());
  CHECK(GetOrientation(IndexId::kSilhouette) == Orientation::kMaximize);
  CHECK(GetOrientation(IndexId::kDaviesBouldin) == Orientation::kMinimize);
  CHECK(GetOrientation(IndexId::kHubertLevin) == Orientation::kMinimize);
}
