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

#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "clustrec/config.hpp"
#include "clustrec/corpus.hpp"
#include "clustrec/error.hpp"
#include "clustrec/pipeline.hpp"
#include "clustrec/store.hpp"

namespace {

using clustrec::Error;
using clustrec::ErrorCode;

std::string FlagName(std::string_view key) {
  std::string s(key);
  for (char& c : s) {
    if (c == '_') c = '-';
  }
  return "--" + s;
}

void PrintTable(const clustrec::PerformanceTable& t) {
  std::cout << "measure " << t.measure << "\n";
  for (std::size_t d = 0; d < t.num_datasets(); ++d) {
    std::cout << "  " << t.datasets[d] << "\t" << t.best_name(d) << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ranked recommendation of clustering algorithms for new datasets."};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_file;
  bool quiet = false;
  bool no_pca = false;
  std::map<std::string, std::string, std::less<>> values;
  app.add_option("-c,--config", config_file, "key = value configuration file");
  app.add_flag("-q,--quiet", quiet, "no progress messages on stderr");
  app.add_flag("--no-pca", no_pca, "build graphs on the normalized features (pca = false)");
  std::map<std::string, CLI::Option*> options;
  for (std::string_view key : clustrec::ConfigKeys()) {
    options[std::string(key)] =
        app.add_option(FlagName(key), values[std::string(key)], "config key " + std::string(key));
  }
  auto* layers = app.add_option("--layers", values["gcn_layers"], "alias of --gcn-layers");
  auto* emb = app.add_option("--emb", values["gcn_embedding"], "alias of --gcn-embedding");

  auto* evaluate = app.add_subcommand("evaluate", "score every algorithm on every dataset");
  auto* train = app.add_subcommand("train", "train the graph classifier and ranker per measure");
  auto* recommend = app.add_subcommand("recommend", "rank the algorithms for a new dataset");
  std::string dataset_path, measure;
  recommend->add_option("dataset", dataset_path, "CSV file")->required();
  recommend->add_option("-m,--measure", measure, "measure (default: the first configured)");
  auto* benchmark = app.add_subcommand("benchmark", "leave-one-out comparison report");
  auto* store_cmd = app.add_subcommand("store", "inspect the artifact store");
  store_cmd->require_subcommand(1);
  std::string prefix;
  auto* store_ls = store_cmd->add_subcommand("ls", "list artifact keys");
  store_ls->add_option("prefix", prefix, "key prefix");
  auto* store_rm = store_cmd->add_subcommand("rm", "remove artifacts under a key prefix");
  store_rm->add_option("prefix", prefix, "key prefix ('' removes everything)")->required();
  auto* generate = app.add_subcommand("generate-corpus", "write a synthetic corpus");
  clustrec::CorpusSpec spec;
  std::string out_dir;
  generate->add_option("dir", out_dir, "output directory")->required();
  generate->add_option("--datasets", spec.datasets);
  generate->add_option("--min-rows", spec.min_rows);
  generate->add_option("--max-rows", spec.max_rows);
  generate->add_option("--min-dims", spec.min_dims);
  generate->add_option("--max-dims", spec.max_dims);
  generate->add_option("--min-clusters", spec.min_clusters);
  generate->add_option("--max-clusters", spec.max_clusters);
  generate->add_option("--corpus-seed", spec.seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    clustrec::RunConfig config;
    if (!config_file.empty()) config.LoadFile(config_file);
    for (const auto& [key, opt] : options) {
      if (opt->count() > 0) config.Set(key, values[key]);
    }
    if (layers->count() > 0) config.Set("gcn_layers", values["gcn_layers"]);
    if (emb->count() > 0) config.Set("gcn_embedding", values["gcn_embedding"]);
    if (no_pca) config.pca = false;

    if (generate->parsed()) {
      const auto corpus = clustrec::GenerateCorpus(spec);
      clustrec::WriteCorpus(corpus, out_dir);
      std::cout << "wrote " << corpus.size() << " datasets to " << out_dir << "\n";
      return 0;
    }
    if (store_cmd->parsed()) {
      const clustrec::ArtifactStore store(
          clustrec::ArtifactStore::ResolveRoot(config.StoreRoot()));
      if (store_ls->parsed()) {
        for (const auto& key : store.List()) {
          if (key.compare(0, prefix.size(), prefix) == 0) std::cout << key << "\n";
        }
      } else {
        std::cout << "removed " << store.Invalidate(prefix) << " artifacts\n";
      }
      return 0;
    }

    clustrec::Pipeline pipeline(config);
    if (!quiet) pipeline.set_log(&std::cerr);
    if (evaluate->parsed()) {
      for (const auto& t : pipeline.Evaluate()) PrintTable(t);
      std::cout << "algorithm runs: " << pipeline.counters().tune.runs.load() << "\n";
    } else if (train->parsed()) {
      for (const auto& t : pipeline.TrainAll()) {
        std::cout << "measure " << t.measure << "\n" << t.summary;
      }
    } else if (recommend->parsed()) {
      if (measure.empty()) measure = pipeline.MeasureNames().front();
      const auto rec = pipeline.Recommend(dataset_path, measure);
      std::cout << "dataset " << rec.dataset << ", measure " << rec.measure << "\n";
      for (std::size_t i = 0; i < rec.entries.size(); ++i) {
        std::cout << i + 1 << "\t" << rec.entries[i].algorithm << "\t"
                  << clustrec::FormatDouble(rec.entries[i].score) << "\n";
      }
    } else if (benchmark->parsed()) {
      for (const auto& r : pipeline.BenchmarkAll()) std::cout << r.text << "\n";
    }
    return 0;
  } catch (const Error& e) {
    std::cerr << "clustrec: " << e.what() << "\n";
    return clustrec::ExitCodeFor(e.code());
  } catch (const std::exception& e) {
    std::cerr << "clustrec: internal error: " << e.what() << "\n";
    return 3;
  }
}
