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

#include <sstream>

#include "doctest.h"

#include "clustrec/error.hpp"
#include "clustrec/pipeline.hpp"
#include "pipeline_fixture.hpp"

using namespace clustrec;

TEST_CASE("exit codes") {
  CHECK(ExitCodeFor(ErrorCode::kConfig) == 1);
  CHECK(ExitCodeFor(ErrorCode::kInvalidParams) == 1);
  CHECK(ExitCodeFor(ErrorCode::kParse) == 2);
  CHECK(ExitCodeFor(ErrorCode::kMissingArtifact) == 2);
  CHECK(ExitCodeFor(ErrorCode::kInternal) == 3);
}

TEST_CASE("output header") {
  RunConfig c;
  const std::string h = OutputHeader(c, "benchmark report");
  CHECK(h.rfind("# clustrec benchmark report\n", 0) == 0);
  CHECK(h.find("# master_seed = 42\n") != std::string::npos);
}

TEST_CASE("train, recommend and warm reruns") {
  testing::TempDir dir("pipe");
  testing::WriteToyCorpus(dir);
  const RunConfig config = testing::ToyConfig(dir);
  std::string summary, recommended;
  {
    Pipeline p(config);
    // Nothing trained yet.
    try {
      p.Recommend(config.corpus + "/ds_000.csv", "Silhouette");
      FAIL("expected MissingArtifact");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kMissingArtifact);
      CHECK(std::string(e.what()).find("clustrec train") != std::string::npos);
    }
    const auto trained = p.Train("Silhouette");
    CHECK(trained.table.num_datasets() == 6);
    CHECK(trained.embeddings.size() == 6);
    CHECK(p.counters().graphs_built.load() == 6);
    CHECK(p.counters().gcn_trainings.load() == 1);
    CHECK(p.counters().ranker_trainings.load() == 1);
    CHECK(p.counters().tune.runs.load() > 0);
    summary = trained.summary;
    const auto rec = p.Recommend(config.corpus + "/ds_001.csv", "Silhouette");
    CHECK(rec.entries.size() == 4);
    for (const auto& e : rec.entries) recommended += e.algorithm + ",";
  }
  {
    Pipeline warm(config);
    const auto trained = warm.Train("Silhouette");
    CHECK(warm.counters().tune.runs.load() == 0);
    CHECK(warm.counters().perf_cache_hits.load() == 6);
    CHECK(warm.counters().graphs_built.load() == 0);
    CHECK(warm.counters().features_built.load() == 0);
    CHECK(warm.counters().gcn_trainings.load() == 0);
    CHECK(warm.counters().ranker_trainings.load() == 0);
    CHECK(trained.summary == summary);
    std::string again;
    for (const auto& e : warm.Recommend(config.corpus + "/ds_001.csv", "Silhouette").entries) {
      again += e.algorithm + ",";
    }
    CHECK(again == recommended);
  }
  {
    // A changed ranker setting keeps the GCN but retrains the ranker.
    RunConfig changed = config;
    changed.ranker.trees = 21;
    Pipeline p(changed);
    p.Train("Silhouette");
    CHECK(p.counters().gcn_trainings.load() == 0);
    CHECK(p.counters().ranker_trainings.load() == 1);
    CHECK(p.GcnHash("Silhouette") == Pipeline(config).GcnHash("Silhouette"));
    CHECK(p.RankerHash("Silhouette") != Pipeline(config).RankerHash("Silhouette"));
  }
  const std::string perf = testing::ReadText(dir.path() / "out" / "perf_Silhouette.tsv");
  CHECK(perf.rfind("# clustrec performance table\n", 0) == 0);
}

TEST_CASE("benchmark report") {
  testing::TempDir dir("pipe");
  testing::WriteToyCorpus(dir);
  Pipeline p(testing::ToyConfig(dir));
  const BenchmarkReport r = p.Benchmark("Silhouette");
  REQUIRE(r.methods.size() == 4);
  CHECK(r.methods[0].method == "graph_embedding");
  CHECK(r.methods[3].method == "popularity");
  for (const auto& m : r.methods) CHECK(m.folds.size() == 6);
  CHECK(r.text.find("random_ranking_mrr") != std::string::npos);
  const std::string file = testing::ReadText(dir.path() / "out" / "benchmark_Silhouette.tsv");
  CHECK(file.find(r.text) != std::string::npos);
  Pipeline warm(testing::ToyConfig(dir));
  CHECK(warm.Benchmark("Silhouette").text == r.text);
  CHECK(warm.counters().gcn_trainings.load() == 0);
}

TEST_CASE("configuration errors") {
  testing::TempDir dir("pipe");
  RunConfig c = testing::ToyConfig(dir);
  c.algorithms = {"KM", "KM"};
  try {
    Pipeline p(c);
    FAIL("expected Config");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kConfig);
  }
  RunConfig empty = testing::ToyConfig(dir);
  Pipeline p(empty);
  CHECK_THROWS_AS(p.Corpus(), Error);  // the corpus directory does not exist
  CHECK_THROWS_AS(p.Table("Dunn"), Error);
}
