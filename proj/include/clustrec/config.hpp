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

// Run configuration. The file format is one "key = value" per line, '#'
// starts a comment, lists are comma-separated. Keys:
//
//   corpus, output, store, label_column
//   measures            index names, or "all"
//   average_ranking     true|false
//   algorithms          algorithm names, or "all"
//   repeats, k_min, k_max, master_seed, jobs
//   pca, pca_target, threshold
//   walks, walk_length, walk_dim, window, negatives, walk_epochs, walk_lr
//   gcn_layers, gcn_embedding, gcn_lr, gcn_epochs, gcn_patience, strict_gcn
//   ranker_trees, ranker_depth, ranker_shrinkage
//   excess_kurtosis

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "clustrec/algorithms.hpp"
#include "clustrec/deepwalk.hpp"
#include "clustrec/gcn.hpp"
#include "clustrec/indices.hpp"
#include "clustrec/ranker.hpp"

namespace clustrec {

struct RunConfig {
  std::string corpus;
  std::string output = "clustrec-out";
  std::string store;  // empty: <output>/store
  std::string label_column = "class";
  std::vector<IndexId> measures = {IndexId::kSilhouette};
  bool average_ranking = false;
  std::vector<std::string> algorithms;  // empty: every registered algorithm
  int repeats = 10;
  HyperparamGrid grid;
  std::uint64_t master_seed = 42;
  int jobs = 0;  // 0: hardware concurrency
  bool pca = true;
  double pca_target = 0.90;
  double threshold = 0.9;
  DeepWalkParams deepwalk;
  GcnConfig gcn;
  bool strict_gcn = false;
  RankerConfig ranker;
  bool excess_kurtosis = false;

  // Applies one key; throws Config on unknown keys or bad values.
  void Set(std::string_view key, std::string_view value);
  void ParseText(std::string_view text);
  void LoadFile(const std::string& path);
  void Validate() const;

  std::vector<std::string> ResolvedAlgorithms() const;
  int ResolvedJobs() const;
  std::string StoreRoot() const;

  // Every key with its resolved value, sorted by key. Used as the
  // reproducibility header of every output file.
  std::string ToText() const;
};

// Every key accepted by RunConfig::Set, in the order documented above.
std::span<const std::string_view> ConfigKeys();

// First 16 hex digits of the SHA-256 of `text`.
std::string ShortHash(std::string_view text);

}  // namespace clustrec
