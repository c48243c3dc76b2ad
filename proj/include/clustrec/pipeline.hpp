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

// End-to-end workflows behind the command-line tool. Every expensive
// intermediate goes through the artifact store:
//
//   perf_table    <measure>.<dataset>   one-row table per measure
//   graph         <dataset>             similarity graph after PCA
//   node_features <dataset>             DeepWalk matrix
//   gcnn_model    <measure>[.fold.<d>]  classifier, whole corpus or one fold
//   embedding     <measure>.<dataset>   readout vector
//   ranker_model  <measure>
//   report        <what>.<measure>      summaries and benchmark reports
//
// Config hashes cover exactly the inputs of each artifact (dataset content,
// upstream hashes and the relevant parameters), so they can be computed
// before anything runs.

#pragma once

#include <atomic>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "clustrec/config.hpp"
#include "clustrec/error.hpp"
#include "clustrec/evaluation.hpp"
#include "clustrec/gcn.hpp"
#include "clustrec/graph.hpp"
#include "clustrec/performance.hpp"
#include "clustrec/ranker.hpp"
#include "clustrec/store.hpp"

namespace clustrec {

// 0 success, 1 configuration error, 2 data error, 3 internal error.
int ExitCodeFor(ErrorCode code);

struct PipelineCounters {
  TuneCounters tune;  // algorithm executions
  std::atomic<long> perf_cache_hits{0};
  std::atomic<long> graphs_built{0};
  std::atomic<long> features_built{0};
  std::atomic<long> gcn_trainings{0};
  std::atomic<long> ranker_trainings{0};
};

struct CorpusEntry {
  NumericDataset data;
  std::string hash;  // content hash of the preprocessed matrix and name
};

struct GraphArtifacts {
  SimilarityGraph graph;
  Eigen::MatrixXd features;  // DeepWalk node features
  std::string graph_hash;
  std::string features_hash;
};

struct TrainedMeasure {
  std::string measure;
  PerformanceTable table;
  GcnModel gcn;
  RankerModel ranker;
  FeatureMap embeddings;
  std::string gcn_hash;
  std::string ranker_hash;
  std::string summary;  // training summary text, shared by cold and warm runs
};

struct MethodFolds {
  std::string method;  // graph_embedding, distance, cad or popularity
  std::vector<FoldResult> folds;
};

struct BenchmarkReport {
  std::string measure;
  int algorithms = 0;
  std::vector<MethodFolds> methods;
  std::string text;     // summary table
  std::string folds;    // per-fold rows
  std::string mrr_at_k; // (k, value per method) series
};

// Header embedded at the top of every output file: the kind line followed by
// the resolved configuration, each line prefixed with "# ".
std::string OutputHeader(const RunConfig& config, std::string_view kind);

class Pipeline {
 public:
  // Validates the configuration.
  explicit Pipeline(RunConfig config);

  const RunConfig& config() const { return config_; }
  const ArtifactStore& store() const { return store_; }
  PipelineCounters& counters() { return counters_; }
  // Progress messages; nothing is logged when unset.
  void set_log(std::ostream* log) { log_ = log; }

  // Algorithms of the run in ordinal order.
  const std::vector<std::string>& algorithms() const { return algorithms_; }
  // Configured measures, then kAverageRanking when enabled.
  std::vector<std::string> MeasureNames() const;

  // Every *.csv of the corpus directory, preprocessed; loaded once.
  const std::vector<CorpusEntry>& Corpus();

  // Tables of MeasureNames(), written to <output>/perf_<measure>.tsv.
  std::vector<PerformanceTable> Evaluate();
  const PerformanceTable& Table(const std::string& measure);

  const std::vector<GraphArtifacts>& Graphs();
  GraphArtifacts BuildGraph(const CorpusEntry& entry);

  TrainedMeasure Train(const std::string& measure);
  std::vector<TrainedMeasure> TrainAll();

  // Fails with MissingArtifact when `measure` has not been trained under
  // this configuration.
  RankedRecommendation Recommend(const std::string& dataset_path,
                                 const std::string& measure);

  BenchmarkReport Benchmark(const std::string& measure);
  std::vector<BenchmarkReport> BenchmarkAll();

  // Cache keys, computable without running anything.
  std::string PerfHash(const CorpusEntry& entry, const std::string& measure) const;
  std::string GcnHash(const std::string& measure);
  std::string RankerHash(const std::string& measure);

 private:
  std::vector<IndexId> ComputedIndices() const;
  GcnConfig GcnFor(const std::string& measure) const;
  RankerConfig RankerFor(const std::string& measure) const;
  std::vector<GraphInput> GraphInputs(const PerformanceTable& table);
  FeatureMap Embed(const GcnModel& model, const std::string& measure,
                   const std::string& gcn_hash);
  void WriteOutput(const std::string& file, const std::string& kind,
                   const std::string& body) const;
  void Log(const std::string& message) const;

  RunConfig config_;
  ArtifactStore store_;
  PipelineCounters counters_;
  std::ostream* log_ = nullptr;
  std::vector<std::string> algorithms_;
  std::optional<std::vector<CorpusEntry>> corpus_;
  std::optional<std::vector<GraphArtifacts>> graphs_;
  std::optional<std::vector<PerformanceTable>> tables_;  // MeasureNames() order
};

}  // namespace clustrec
