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

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "clustrec/algorithms.hpp"
#include "clustrec/indices.hpp"

namespace clustrec {

inline constexpr std::string_view kAverageRanking = "AverageRanking";

// Scores, ranks and best algorithm for every (dataset, algorithm) cell under
// one measure. Algorithms are kept in ordinal order; column position is the
// tie-break ordinal.
struct PerformanceTable {
  std::string measure;  // an IndexName or kAverageRanking
  int repeats = 1;
  std::uint64_t master_seed = 0;
  std::vector<std::string> datasets;
  std::vector<std::string> algorithms;
  std::vector<std::vector<std::optional<double>>> scores;  // [d][a]
  std::vector<std::vector<double>> ranks;                  // [d][a], 1 = best
  std::vector<std::vector<std::string>> params;            // [d][a], "-" if none
  std::vector<int> best;                                   // column of a_best

  std::size_t num_datasets() const { return datasets.size(); }
  std::size_t num_algorithms() const { return algorithms.size(); }
  const std::string& best_name(std::size_t d) const {
    return algorithms[best[d]];
  }

  // Fills ranks and best from scores.
  void Rerank(Orientation orientation);

  std::string Serialize() const;
  static PerformanceTable Parse(const std::string& text);
};

// Fractional ranks of the defined scores (1 = best); undefined scores take
// the positions after them in column order.
std::vector<double> RankScores(std::span<const std::optional<double>> scores,
                               Orientation orientation);

// Column with rank 1; on ties the lowest column.
int BestColumn(std::span<const double> ranks);

struct EvaluateOptions {
  HyperparamGrid grid;
  int repeats = 10;
  std::uint64_t master_seed = 0;
  int jobs = 1;
  TuneCounters* counters = nullptr;
};

// Seed of the tuned runs of algorithm `ordinal` on dataset `name`; repeat r
// uses MixSeed(CellSeed(...), r).
std::uint64_t CellSeed(std::uint64_t master, const std::string& name,
                       int ordinal);

// One table per entry of `indices`, all computed from a single tuning pass
// per (dataset, algorithm). Failed or undefined cells are recorded as empty
// scores, never thrown.
std::vector<PerformanceTable> EvaluateMany(
    std::span<const NumericDataset> datasets,
    std::span<const std::string> algorithms, std::span<const IndexId> indices,
    const EvaluateOptions& options);

PerformanceTable EvaluateAll(std::span<const NumericDataset> datasets,
                             std::span<const std::string> algorithms,
                             IndexId index, const EvaluateOptions& options);

// Mean rank per cell across tables, re-ranked ascending.
PerformanceTable AverageRanking(std::span<const PerformanceTable> tables);

std::vector<std::pair<std::string, std::string>> LabelPairs(
    const PerformanceTable& t);

}  // namespace clustrec
