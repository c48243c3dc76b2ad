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

// How often each of 17 algorithms was the best performer over a 210-dataset
// collection, per index, with the expected three most popular algorithms.

#pragma once

#include <array>
#include <string>
#include <vector>

#include "clustrec/performance.hpp"

namespace clustrec::testing {

inline const std::vector<std::string>& CountAlgorithms() {
  static const std::vector<std::string> names = {
      "EAC", "PSC", "MST", "SL",  "AL",     "CL", "WL",  "KM",  "KHM",
      "KKM", "MBK", "FC",  "DBSCAN", "MS", "GMF", "GMT", "GMD"};
  return names;
}

struct CountRow {
  std::string index;
  std::array<int, 17> counts;
  std::array<std::string, 3> top3;
};

inline const std::vector<CountRow>& CountRows() {
  static const std::vector<CountRow> rows = {
      {"BezdekPal", {19, 0, 10, 117, 29, 5, 3, 3, 2, 5, 0, 2, 14, 1, 0, 0, 0}, {"SL", "AL", "EAC"}},
      {"Dunn", {26, 1, 12, 38, 34, 22, 1, 8, 6, 7, 3, 1, 44, 2, 3, 1, 1}, {"DBSCAN", "SL", "AL"}},
      {"CalinskiHarabasz", {6, 4, 1, 1, 4, 4, 12, 78, 18, 31, 7, 26, 1, 1, 4, 5, 7}, {"KM", "KKM", "FC"}},
      {"Silhouette", {37, 1, 3, 25, 40, 9, 18, 35, 4, 5, 4, 4, 4, 3, 5, 4, 9}, {"AL", "EAC", "KM"}},
      {"MilliganCooper", {27, 6, 6, 28, 44, 22, 5, 16, 3, 11, 5, 1, 24, 2, 3, 6, 1}, {"AL", "SL", "EAC"}},
      {"DaviesBouldin", {8, 0, 3, 108, 52, 5, 5, 9, 2, 0, 2, 3, 1, 2, 1, 3, 6}, {"SL", "AL", "KM"}},
      {"HandlKnowlesKell", {18, 4, 26, 85, 27, 5, 7, 12, 3, 3, 2, 3, 9, 0, 3, 3, 0}, {"SL", "AL", "MST"}},
      {"HubertLevin", {29, 7, 2, 41, 43, 22, 9, 24, 2, 0, 5, 3, 8, 2, 6, 1, 6}, {"AL", "SL", "EAC"}},
      {"SDScat", {11, 10, 3, 70, 33, 9, 4, 11, 15, 0, 3, 5, 17, 3, 4, 3, 9}, {"SL", "AL", "DBSCAN"}},
      {"XieBeni", {5, 0, 11, 67, 37, 22, 11, 3, 1, 1, 3, 8, 34, 3, 0, 3, 1}, {"SL", "AL", "DBSCAN"}},
      {"AverageRanking", {28, 0, 2, 35, 67, 18, 17, 23, 2, 1, 2, 5, 0, 3, 0, 4, 3}, {"AL", "SL", "EAC"}},
  };
  return rows;
}

// A table with one row per counted win, rows grouped by algorithm.
inline PerformanceTable TableFromCounts(const CountRow& row) {
  PerformanceTable t;
  t.measure = row.index;
  t.algorithms = CountAlgorithms();
  for (int a = 0; a < 17; ++a) {
    for (int c = 0; c < row.counts[a]; ++c) {
      t.datasets.push_back("d" + std::to_string(t.datasets.size()));
      std::vector<std::optional<double>> scores(17, 0.0);
      scores[a] = 1.0;
      t.scores.push_back(scores);
    }
  }
  t.params.assign(t.datasets.size(), std::vector<std::string>(17, "-"));
  t.Rerank(Orientation::kMaximize);
  return t;
}

}  // namespace clustrec::testing
