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

#include "clustrec/pipeline.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "clustrec/baselines.hpp"
#include "clustrec/corpus.hpp"
#include "clustrec/deepwalk.hpp"
#include "clustrec/parallel.hpp"
#include "clustrec/serialize.hpp"
#include "clustrec/stats.hpp"

namespace fs = std::filesystem;

namespace clustrec {
namespace {

constexpr std::uint64_t kWalkSalt = 0x77616c6b;

// Key components must stay within [A-Za-z0-9._-].
std::string Sanitize(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                    (c >= '0' && c <= '9') || c == '.' || c == '_' || c == '-';
    if (!ok) c = '_';
  }
  return out.empty() ? "_" : out;
}

std::string GridText(const HyperparamGrid& g) {
  std::ostringstream out;
  out << "k=" << g.k_min << ".." << g.k_max << ";eps_q=";
  for (double q : g.eps_quantiles) out << FormatDouble(q) << ',';
  out << ";min_pts=";
  for (int p : g.min_pts) out << p << ',';
  out << ";bw_q=";
  for (double q : g.bandwidth_quantiles) out << FormatDouble(q) << ',';
  return out.str();
}

PerformanceTable RowOf(const PerformanceTable& t, std::size_t d) {
  PerformanceTable r;
  r.measure = t.measure;
  r.repeats = t.repeats;
  r.master_seed = t.master_seed;
  r.algorithms = t.algorithms;
  r.datasets = {t.datasets[d]};
  r.scores = {t.scores[d]};
  r.ranks = {t.ranks[d]};
  r.params = {t.params[d]};
  r.best = {t.best[d]};
  return r;
}

void AppendRow(PerformanceTable& t, const PerformanceTable& row) {
  if (t.algorithms.empty()) {
    t.measure = row.measure;
    t.repeats = row.repeats;
    t.master_seed = row.master_seed;
    t.algorithms = row.algorithms;
  }
  if (row.algorithms != t.algorithms || row.datasets.size() != 1) {
    throw Error(ErrorCode::kCorruptArtifact, "cached row does not match the run");
  }
  t.datasets.push_back(row.datasets[0]);
  t.scores.push_back(row.scores[0]);
  t.ranks.push_back(row.ranks[0]);
  t.params.push_back(row.params[0]);
  t.best.push_back(row.best[0]);
}

std::string MatrixPayload(const Eigen::MatrixXd& m) {
  std::string out;
  AppendMatrix(out, m);
  return out;
}

Eigen::MatrixXd MatrixFrom(const std::string& payload) {
  std::size_t pos = 0;
  Eigen::MatrixXd m = ReadMatrix(payload, pos);
  if (pos != payload.size()) {
    throw Error(ErrorCode::kCorruptArtifact, "trailing bytes after matrix");
  }
  return m;
}

std::string Num(double v) { return FormatDouble(v); }

std::string Rendered(const RankedRecommendation& rec) {
  std::ostringstream out;
  out << "dataset\t" << rec.dataset << "\nmeasure\t" << rec.measure << "\n";
  out << "rank\talgorithm\tscore\n";
  for (std::size_t i = 0; i < rec.entries.size(); ++i) {
    out << i + 1 << '\t' << rec.entries[i].algorithm << '\t'
        << Num(rec.entries[i].score) << "\n";
  }
  return out.str();
}

}  // namespace

int ExitCodeFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kConfig:
    case ErrorCode::kInvalidParams:
      return 1;
    case ErrorCode::kInternal:
      return 3;
    default:
      return 2;
  }
}

std::string OutputHeader(const RunConfig& config, std::string_view kind) {
  std::string out = "# clustrec " + std::string(kind) + "\n";
  for (const auto& line : SplitLines(config.ToText())) out += "# " + line + "\n";
  return out;
}

Pipeline::Pipeline(RunConfig config)
    : config_(std::move(config)),
      store_(ArtifactStore::ResolveRoot(config_.StoreRoot())) {
  config_.Validate();
  std::vector<AlgorithmInfo> infos;
  for (const auto& name : config_.ResolvedAlgorithms()) infos.push_back(FindAlgorithm(name));
  std::sort(infos.begin(), infos.end(),
            [](const auto& a, const auto& b) { return a.ordinal < b.ordinal; });
  for (std::size_t i = 0; i < infos.size(); ++i) {
    if (i > 0 && infos[i].ordinal == infos[i - 1].ordinal) {
      throw Error(ErrorCode::kConfig, "algorithm listed twice: " + infos[i].name);
    }
    algorithms_.push_back(infos[i].name);
  }
}

void Pipeline::Log(const std::string& message) const {
  if (log_) *log_ << message << std::endl;
}

void Pipeline::WriteOutput(const std::string& file, const std::string& kind,
                           const std::string& body) const {
  const fs::path dir = config_.output;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::kIo, "cannot create " + dir.string());
  const fs::path path = dir / file;
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << OutputHeader(config_, kind) << body;
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
}

std::vector<std::string> Pipeline::MeasureNames() const {
  std::vector<std::string> names;
  for (IndexId id : config_.measures) names.emplace_back(IndexName(id));
  if (config_.average_ranking) names.emplace_back(kAverageRanking);
  return names;
}

std::vector<IndexId> Pipeline::ComputedIndices() const {
  if (!config_.average_ranking) return config_.measures;
  return {AllIndices().begin(), AllIndices().end()};
}

const std::vector<CorpusEntry>& Pipeline::Corpus() {
  if (corpus_) return *corpus_;
  if (config_.corpus.empty()) throw Error(ErrorCode::kConfig, "corpus is not set");
  const SchemaOverrides schema = {{config_.label_column, ColumnKind::kLabel}};
  std::vector<CorpusEntry> entries;
  for (const auto& path : ListCsvFiles(config_.corpus)) {
    CorpusEntry e;
    try {
      e.data = Preprocess(LoadCsv(path.string(), schema));
    } catch (const Error& err) {
      throw Error(err.code(), path.string() + ": " + err.what());
    }
    std::string content = e.data.name + "\n";
    AppendMatrix(content, e.data.matrix);
    e.hash = ShortHash(content);
    entries.push_back(std::move(e));
  }
  if (entries.size() < 3) {
    throw Error(ErrorCode::kTooFewSamples,
                "corpus " + config_.corpus + " has fewer than 3 datasets");
  }
  corpus_ = std::move(entries);
  return *corpus_;
}

std::string Pipeline::PerfHash(const CorpusEntry& entry,
                               const std::string& measure) const {
  std::ostringstream s;
  s << "perf_table\n" << entry.hash << "\nmeasure=" << measure << "\nalgorithms=";
  for (const auto& a : algorithms_) s << a << ',';
  s << "\ngrid=" << GridText(config_.grid) << "\nrepeats=" << config_.repeats
    << "\nseed=" << config_.master_seed << "\n";
  return ShortHash(s.str());
}

std::vector<PerformanceTable> Pipeline::Evaluate() {
  if (tables_) return *tables_;
  const auto& corpus = Corpus();
  const std::vector<IndexId> indices = ComputedIndices();
  const std::size_t nd = corpus.size();
  const std::size_t ni = indices.size();

  auto key = [&](std::size_t d, std::size_t i) {
    const std::string m(IndexName(indices[i]));
    return ArtifactKey{"perf_table", Sanitize(m + "." + corpus[d].data.name),
                       PerfHash(corpus[d], m)};
  };
  std::vector<std::vector<std::optional<PerformanceTable>>> rows(
      nd, std::vector<std::optional<PerformanceTable>>(ni));
  std::vector<std::size_t> missing;
  for (std::size_t d = 0; d < nd; ++d) {
    bool complete = true;
    for (std::size_t i = 0; i < ni; ++i) {
      if (auto payload = store_.Get(key(d, i))) {
        rows[d][i] = PerformanceTable::Parse(*payload);
      } else {
        complete = false;
      }
    }
    if (complete) {
      ++counters_.perf_cache_hits;
    } else {
      missing.push_back(d);
    }
  }
  if (!missing.empty()) {
    Log("evaluating " + std::to_string(missing.size()) + " of " +
        std::to_string(nd) + " datasets");
    std::vector<NumericDataset> todo;
    for (std::size_t d : missing) todo.push_back(corpus[d].data);
    EvaluateOptions options;
    options.grid = config_.grid;
    options.repeats = config_.repeats;
    options.master_seed = config_.master_seed;
    options.jobs = config_.ResolvedJobs();
    options.counters = &counters_.tune;
    const auto fresh = EvaluateMany(todo, algorithms_, indices, options);
    for (std::size_t j = 0; j < missing.size(); ++j) {
      for (std::size_t i = 0; i < ni; ++i) {
        PerformanceTable row = RowOf(fresh[i], j);
        store_.Put(key(missing[j], i), row.Serialize());
        rows[missing[j]][i] = std::move(row);
      }
    }
  }

  std::vector<PerformanceTable> computed(ni);
  for (std::size_t i = 0; i < ni; ++i) {
    for (std::size_t d = 0; d < nd; ++d) AppendRow(computed[i], *rows[d][i]);
  }
  std::ostringstream undefined;
  undefined << "measure\tdataset\talgorithm\n";
  for (const auto& t : computed) {
    WriteOutput("perf_" + t.measure + ".tsv", "performance table", t.Serialize());
    for (std::size_t d = 0; d < t.num_datasets(); ++d) {
      for (std::size_t a = 0; a < t.num_algorithms(); ++a) {
        if (!t.scores[d][a]) {
          undefined << t.measure << '\t' << t.datasets[d] << '\t' << t.algorithms[a] << "\n";
        }
      }
    }
  }
  WriteOutput("undefined_cells.tsv", "cells without a defined score", undefined.str());

  std::vector<PerformanceTable> reported;
  for (const auto& name : MeasureNames()) {
    if (name == kAverageRanking) {
      PerformanceTable avg = AverageRanking(computed);
      WriteOutput("perf_" + avg.measure + ".tsv", "performance table", avg.Serialize());
      reported.push_back(std::move(avg));
    } else {
      for (const auto& t : computed) {
        if (t.measure == name) reported.push_back(t);
      }
    }
  }
  tables_ = reported;
  return reported;
}

const PerformanceTable& Pipeline::Table(const std::string& measure) {
  Evaluate();
  for (const auto& t : *tables_) {
    if (t.measure == measure) return t;
  }
  throw Error(ErrorCode::kConfig, "measure " + measure + " is not configured");
}

GraphArtifacts Pipeline::BuildGraph(const CorpusEntry& entry) {
  GraphArtifacts g;
  const std::string id = Sanitize(entry.data.name);
  g.graph_hash = ShortHash("graph\n" + entry.hash + "\npca=" + (config_.pca ? "1" : "0") +
                           "\ntarget=" + Num(config_.pca_target) +
                           "\nthreshold=" + Num(config_.threshold) + "\n");
  const ArtifactKey gkey{"graph", id, g.graph_hash};
  if (auto payload = store_.Get(gkey)) {
    g.graph = SimilarityGraph::Parse(*payload);
  } else {
    const ReducedDataset r = PcaReduce(entry.data, config_.pca_target, config_.pca);
    g.graph = BuildSimilarityGraph(r, config_.threshold);
    store_.Put(gkey, g.graph.Serialize());
    ++counters_.graphs_built;
  }
  const std::uint64_t seed =
      MixSeed(config_.master_seed, HashString(entry.data.name), kWalkSalt);
  g.features_hash = ShortHash("node_features\n" + g.graph_hash + "\n" +
                              config_.deepwalk.ToString() + "\nseed=" +
                              std::to_string(seed) + "\n");
  const ArtifactKey fkey{"node_features", id, g.features_hash};
  if (auto payload = store_.Get(fkey)) {
    g.features = MatrixFrom(*payload);
  } else {
    g.features = NodeFeatures(g.graph, config_.deepwalk, seed);
    store_.Put(fkey, MatrixPayload(g.features));
    ++counters_.features_built;
  }
  return g;
}

const std::vector<GraphArtifacts>& Pipeline::Graphs() {
  if (graphs_) return *graphs_;
  const auto& corpus = Corpus();
  std::vector<GraphArtifacts> out(corpus.size());
  Log("building graphs and node features");
  ParallelFor(corpus.size(), config_.ResolvedJobs(),
              [&](std::size_t d) { out[d] = BuildGraph(corpus[d]); });
  graphs_ = std::move(out);
  return *graphs_;
}

GcnConfig Pipeline::GcnFor(const std::string& measure) const {
  GcnConfig c = config_.gcn;
  c.seed = MixSeed(config_.master_seed, HashString("gcn"), HashString(measure));
  c.jobs = config_.ResolvedJobs();
  return c;
}

RankerConfig Pipeline::RankerFor(const std::string& measure) const {
  RankerConfig c = config_.ranker;
  c.seed = MixSeed(config_.master_seed, HashString("ranker"), HashString(measure));
  return c;
}

std::string Pipeline::GcnHash(const std::string& measure) {
  const auto& corpus = Corpus();
  const auto& graphs = Graphs();
  std::vector<std::string> label_measures;
  if (measure == kAverageRanking) {
    for (IndexId id : AllIndices()) label_measures.emplace_back(IndexName(id));
  } else {
    label_measures.push_back(measure);
  }
  std::ostringstream s;
  s << "gcnn_model\n" << GcnFor(measure).ToString() << "\nmeasure=" << measure << "\n";
  for (std::size_t d = 0; d < corpus.size(); ++d) {
    s << corpus[d].data.name << '\t' << graphs[d].features_hash;
    for (const auto& m : label_measures) s << '\t' << PerfHash(corpus[d], m);
    s << "\n";
  }
  return ShortHash(s.str());
}

std::string Pipeline::RankerHash(const std::string& measure) {
  std::ostringstream s;
  s << "ranker_model\n" << GcnHash(measure) << "\n" << RankerFor(measure).ToString()
    << "\nexcess_kurtosis=" << config_.excess_kurtosis << "\n";
  return ShortHash(s.str());
}

std::vector<GraphInput> Pipeline::GraphInputs(const PerformanceTable& table) {
  const auto& corpus = Corpus();
  const auto& graphs = Graphs();
  std::vector<GraphInput> inputs;
  for (std::size_t d = 0; d < corpus.size(); ++d) {
    if (table.datasets[d] != corpus[d].data.name) {
      throw Error(ErrorCode::kInternal, "table rows out of corpus order");
    }
    inputs.push_back(MakeGraphInput(corpus[d].data.name, graphs[d].graph.Dense(),
                                    graphs[d].features, table.best[d]));
  }
  return inputs;
}

FeatureMap Pipeline::Embed(const GcnModel& model, const std::string& measure,
                           const std::string& gcn_hash) {
  const auto& corpus = Corpus();
  const auto& graphs = Graphs();
  std::vector<Eigen::RowVectorXd> rows(corpus.size());
  ParallelFor(corpus.size(), config_.ResolvedJobs(), [&](std::size_t d) {
    const ArtifactKey key{"embedding", Sanitize(measure + "." + corpus[d].data.name),
                          ShortHash(gcn_hash + "\n" + graphs[d].features_hash)};
    if (auto payload = store_.Get(key)) {
      rows[d] = MatrixFrom(*payload);
      return;
    }
    const Eigen::MatrixXd f = NormalizeAdjacency(graphs[d].graph.Dense());
    rows[d] = Forward(model, f, graphs[d].features).embedding;
    store_.Put(key, MatrixPayload(rows[d]));
  });
  FeatureMap out;
  for (std::size_t d = 0; d < corpus.size(); ++d) out[corpus[d].data.name] = rows[d];
  return out;
}

TrainedMeasure Pipeline::Train(const std::string& measure) {
  TrainedMeasure t;
  t.measure = measure;
  t.table = Table(measure);
  t.gcn_hash = GcnHash(measure);
  const ArtifactKey gkey{"gcnn_model", Sanitize(measure), t.gcn_hash};
  const ArtifactKey skey{"report", Sanitize("train." + measure), t.gcn_hash};
  auto model_payload = store_.Get(gkey);
  auto summary_payload = store_.Get(skey);
  if (model_payload && summary_payload) {
    t.gcn = GcnModel::Parse(*model_payload);
    t.summary = *summary_payload;
  } else {
    Log("training graph classifier for " + measure);
    const GcnTrainResult r = TrainGcn(GraphInputs(t.table),
                                      static_cast<int>(t.table.num_algorithms()),
                                      GcnFor(measure));
    ++counters_.gcn_trainings;
    t.gcn = r.model;
    std::ostringstream s;
    s << "gcn_model\tgcnn_model/" << gkey.identifier << "/" << t.gcn_hash << "\n"
      << "layers\t" << r.model.layers() << "\nembedding\t" << r.model.embedding
      << "\nclasses\t" << r.model.classes << "\nepochs\t" << r.epochs
      << "\ninitial_loss\t" << Num(r.initial_loss) << "\nfinal_loss\t"
      << Num(r.loss_history.empty() ? r.initial_loss : r.loss_history.back())
      << "\ntrain_accuracy\t" << Num(r.accuracy) << "\nloss_history";
    for (double l : r.loss_history) s << '\t' << Num(l);
    s << "\n";
    t.summary = s.str();
    store_.Put(gkey, t.gcn.Serialize());
    store_.Put(skey, t.summary);
  }
  t.embeddings = Embed(t.gcn, measure, t.gcn_hash);

  t.ranker_hash = RankerHash(measure);
  const ArtifactKey rkey{"ranker_model", Sanitize(measure), t.ranker_hash};
  if (auto payload = store_.Get(rkey)) {
    t.ranker = RankerModel::Parse(*payload);
  } else {
    t.ranker = TrainRanker(AssembleTrainingSet(t.embeddings, t.table), RankerFor(measure));
    ++counters_.ranker_trainings;
    store_.Put(rkey, t.ranker.Serialize());
  }
  WriteOutput("train_" + measure + ".tsv", "training summary",
              t.summary + "ranker_model\tranker_model/" + rkey.identifier + "/" +
                  t.ranker_hash + "\n");
  return t;
}

std::vector<TrainedMeasure> Pipeline::TrainAll() {
  std::vector<TrainedMeasure> out;
  for (const auto& m : MeasureNames()) out.push_back(Train(m));
  return out;
}

RankedRecommendation Pipeline::Recommend(const std::string& dataset_path,
                                         const std::string& measure) {
  const auto names = MeasureNames();
  if (std::find(names.begin(), names.end(), measure) == names.end()) {
    throw Error(ErrorCode::kConfig, "measure " + measure + " is not configured");
  }
  const ArtifactKey gkey{"gcnn_model", Sanitize(measure), GcnHash(measure)};
  const ArtifactKey rkey{"ranker_model", Sanitize(measure), RankerHash(measure)};
  const auto gcn_payload = store_.Get(gkey);
  const auto ranker_payload = store_.Get(rkey);
  if (!gcn_payload || !ranker_payload) {
    throw Error(ErrorCode::kMissingArtifact,
                "no trained model for measure " + measure + " under this configuration (" +
                    (gcn_payload ? rkey : gkey).ToString() +
                    "); run 'clustrec train' with the same configuration and corpus first");
  }
  const GcnModel gcn = GcnModel::Parse(*gcn_payload);
  const RankerModel ranker = RankerModel::Parse(*ranker_payload);

  CorpusEntry entry;
  entry.data = Preprocess(LoadCsv(dataset_path, {{config_.label_column, ColumnKind::kLabel}}));
  std::string content = entry.data.name + "\n";
  AppendMatrix(content, entry.data.matrix);
  entry.hash = ShortHash(content);
  const GraphArtifacts g = BuildGraph(entry);
  const Eigen::RowVectorXd e =
      Forward(gcn, NormalizeAdjacency(g.graph.Dense()), g.features).embedding;
  RankedRecommendation rec = clustrec::Recommend(ranker, e, algorithms_, entry.data.name, measure);

  const std::string text = Rendered(rec);
  store_.Put({"report", Sanitize("recommend." + measure + "." + entry.data.name),
              ShortHash(rkey.config_hash + "\n" + g.features_hash)},
             text);
  WriteOutput("recommend_" + Sanitize(entry.data.name) + "_" + measure + ".tsv",
              "recommendation", text);
  return rec;
}

BenchmarkReport Pipeline::Benchmark(const std::string& measure) {
  const PerformanceTable table = Table(measure);
  const auto& corpus = Corpus();
  const std::size_t nd = corpus.size();
  LooOptions loo;
  loo.ranker = RankerFor(measure);
  loo.jobs = config_.ResolvedJobs();

  BenchmarkReport report;
  report.measure = measure;
  report.algorithms = static_cast<int>(table.num_algorithms());

  // graph_embedding
  std::vector<FoldResult> embedded;
  if (!config_.strict_gcn) {
    const TrainedMeasure trained = Train(measure);
    embedded = LeaveOneOut(table, trained.embeddings, loo);
  } else {
    const std::vector<GraphInput> inputs = GraphInputs(table);
    const std::string base = GcnHash(measure);
    embedded.resize(nd);
    for (std::size_t i = 0; i < nd; ++i) {
      const std::string fold_hash = ShortHash(base + "\nfold=" + corpus[i].data.name);
      const ArtifactKey key{"gcnn_model",
                            Sanitize(measure + ".fold." + corpus[i].data.name), fold_hash};
      GcnModel model;
      if (auto payload = store_.Get(key)) {
        model = GcnModel::Parse(*payload);
      } else {
        std::vector<GraphInput> train;
        for (std::size_t d = 0; d < nd; ++d) {
          if (d != i) train.push_back(inputs[d]);
        }
        GcnConfig c = GcnFor(measure);
        c.seed = MixSeed(c.seed, static_cast<std::uint64_t>(i));
        Log("training fold classifier " + std::to_string(i + 1) + "/" + std::to_string(nd));
        try {
          model = TrainGcn(train, static_cast<int>(table.num_algorithms()), c).model;
        } catch (const Error& e) {
          embedded[i].dataset = corpus[i].data.name;
          embedded[i].error = e.what();
          continue;
        }
        ++counters_.gcn_trainings;
        store_.Put(key, model.Serialize());
      }
      embedded[i] = LeaveOneOutFold(table, Embed(model, measure + ".fold", fold_hash), i, loo);
    }
  }

  FeatureMap distance, cad;
  {
    std::vector<Eigen::RowVectorXd> dv(nd), cv(nd);
    ParallelFor(nd, config_.ResolvedJobs(), [&](std::size_t d) {
      dv[d] = DistanceMetaFeatures(corpus[d].data, config_.excess_kurtosis);
      cv[d] = CadMetaFeatures(corpus[d].data, config_.excess_kurtosis);
    });
    for (std::size_t d = 0; d < nd; ++d) {
      distance[corpus[d].data.name] = dv[d];
      cad[corpus[d].data.name] = cv[d];
    }
  }
  report.methods.push_back({"graph_embedding", std::move(embedded)});
  report.methods.push_back({"distance", LeaveOneOut(table, distance, loo)});
  report.methods.push_back({"cad", LeaveOneOut(table, cad, loo)});
  report.methods.push_back({"popularity", LeaveOneOutPopularity(table)});

  const int na = report.algorithms;
  std::ostringstream s;
  s << "measure\t" << measure << "\ndatasets\t" << nd << "\nalgorithms\t" << na
    << "\nrandom_ranking_mrr\t" << Num(RandomRankingMrr(na)) << "\n";
  s << "metric";
  for (const auto& m : report.methods) s << '\t' << m.method;
  s << "\nSRC";
  for (const auto& m : report.methods) s << '\t' << Num(MeanSrc(m.folds));
  s << "\nMRR";
  for (const auto& m : report.methods) s << '\t' << Num(Mrr(m.folds));
  for (int k = 1; k <= na; ++k) {
    s << "\nMRR@" << k;
    for (const auto& m : report.methods) s << '\t' << Num(MrrAtK(m.folds, k));
  }
  s << "\nfailed_folds";
  for (const auto& m : report.methods) {
    s << '\t' << std::count_if(m.folds.begin(), m.folds.end(),
                               [](const FoldResult& f) { return !f.error.empty(); });
  }
  s << "\n";

  // Significance over the datasets on which every method produced a result.
  std::vector<std::size_t> valid;
  for (std::size_t d = 0; d < nd; ++d) {
    if (std::all_of(report.methods.begin(), report.methods.end(),
                    [&](const MethodFolds& m) { return m.folds[d].error.empty(); })) {
      valid.push_back(d);
    }
  }
  const std::size_t nm = report.methods.size();
  for (const char* what : {"SRC", "RR"}) {
    auto value = [&](std::size_t m, std::size_t d) {
      const FoldResult& f = report.methods[m].folds[d];
      return std::string_view(what) == "SRC" ? f.src : f.reciprocal_rank;
    };
    Eigen::MatrixXd scores(nm, valid.size());
    for (std::size_t m = 0; m < nm; ++m) {
      for (std::size_t j = 0; j < valid.size(); ++j) scores(m, j) = value(m, valid[j]);
    }
    s << "friedman_" << what;
    try {
      // Ranked ascending, so negate to give rank 1 to the highest value.
      const FriedmanResult fr = FriedmanTest(-scores);
      s << "\tstatistic\t" << Num(fr.statistic) << "\tp\t" << Num(fr.p_value) << "\n";
    } catch (const Error& e) {
      s << "\tNA\t" << ErrorCodeName(e.code()) << "\n";
    }
    for (std::size_t m = 1; m < nm; ++m) {
      std::vector<double> x, y;
      for (std::size_t j = 0; j < valid.size(); ++j) {
        x.push_back(scores(m, j));
        y.push_back(scores(0, j));
      }
      s << "wilcoxon_" << what << '\t' << report.methods[0].method << "_vs_"
        << report.methods[m].method;
      try {
        const WilcoxonResult w = WilcoxonSignedRank(x, y);
        s << "\tW+\t" << Num(w.w_plus) << "\tW-\t" << Num(w.w_minus) << "\tn\t" << w.n
          << "\tp\t" << Num(w.p_value) << "\t" << (w.exact ? "exact" : "normal") << "\n";
      } catch (const Error& e) {
        s << "\tNA\t" << ErrorCodeName(e.code()) << "\n";
      }
    }
  }
  report.text = s.str();

  std::ostringstream f;
  f << "method\tdataset\tsrc\treciprocal_rank\ttrain_groups\ttrain_groups_hash\t"
       "predicted\terror\n";
  for (const auto& m : report.methods) {
    for (const auto& fold : m.folds) {
      f << m.method << '\t' << fold.dataset << '\t' << Num(fold.src) << '\t'
        << Num(fold.reciprocal_rank) << '\t' << fold.train_groups << '\t'
        << fold.train_groups_hash << '\t';
      for (std::size_t p = 0; p < fold.predicted.size(); ++p) {
        f << (p ? "," : "") << fold.predicted[p];
      }
      std::string err = fold.error;
      std::replace(err.begin(), err.end(), '\t', ' ');
      std::replace(err.begin(), err.end(), '\n', ' ');
      f << '\t' << err << "\n";
    }
  }
  report.folds = f.str();

  std::ostringstream k;
  k << "k";
  for (const auto& m : report.methods) k << '\t' << m.method;
  k << "\n";
  for (int kk = 1; kk <= na; ++kk) {
    k << kk;
    for (const auto& m : report.methods) k << '\t' << Num(MrrAtK(m.folds, kk));
    k << "\n";
  }
  report.mrr_at_k = k.str();

  store_.Put({"report", Sanitize("benchmark." + measure), ShortHash(config_.ToText() +
                                                                    RankerHash(measure))},
             report.text);
  WriteOutput("benchmark_" + measure + ".tsv", "benchmark report", report.text);
  WriteOutput("folds_" + measure + ".tsv", "benchmark folds", report.folds);
  WriteOutput("mrr_at_k_" + measure + ".tsv", "MRR@K series", report.mrr_at_k);
  return report;
}

std::vector<BenchmarkReport> Pipeline::BenchmarkAll() {
  std::vector<BenchmarkReport> out;
  for (const auto& m : MeasureNames()) out.push_back(Benchmark(m));
  return out;
}

}  // namespace clustrec
