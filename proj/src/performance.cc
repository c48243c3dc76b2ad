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

#include "clustrec/performance.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "clustrec/error.hpp"
#include "clustrec/parallel.hpp"
#include "clustrec/serialize.hpp"

namespace clustrec {

std::vector<double> RankScores(std::span<const std::optional<double>> scores,
                               Orientation orientation) {
  std::vector<std::size_t> defined;
  for (std::size_t a = 0; a < scores.size(); ++a) {
    if (scores[a]) defined.push_back(a);
  }
  std::stable_sort(defined.begin(), defined.end(),
                   [&](std::size_t x, std::size_t y) {
                     return Better(orientation, *scores[x], *scores[y]);
                   });
  std::vector<double> ranks(scores.size(), 0.0);
  std::size_t i = 0;
  while (i < defined.size()) {
    std::size_t j = i + 1;
    while (j < defined.size() && *scores[defined[j]] == *scores[defined[i]]) ++j;
    const double r = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
    for (std::size_t t = i; t < j; ++t) ranks[defined[t]] = r;
    i = j;
  }
  double next = static_cast<double>(defined.size()) + 1.0;
  for (std::size_t a = 0; a < scores.size(); ++a) {
    if (!scores[a]) ranks[a] = next++;
  }
  return ranks;
}

int BestColumn(std::span<const double> ranks) {
  int best = 0;
  for (std::size_t a = 1; a < ranks.size(); ++a) {
    if (ranks[a] < ranks[best]) best = static_cast<int>(a);
  }
  return best;
}

void PerformanceTable::Rerank(Orientation orientation) {
  ranks.resize(scores.size());
  best.resize(scores.size());
  for (std::size_t d = 0; d < scores.size(); ++d) {
    ranks[d] = RankScores(scores[d], orientation);
    best[d] = BestColumn(ranks[d]);
  }
}

std::uint64_t CellSeed(std::uint64_t master, const std::string& name,
                       int ordinal) {
  return MixSeed(master, HashString(name), static_cast<std::uint64_t>(ordinal));
}

std::vector<PerformanceTable> EvaluateMany(
    std::span<const NumericDataset> datasets,
    std::span<const std::string> algorithms, std::span<const IndexId> indices,
    const EvaluateOptions& options) {
  if (options.repeats < 1) {
    throw Error(ErrorCode::kInvalidParams, "repeats must be >= 1");
  }
  options.grid.Validate();
  std::vector<AlgorithmInfo> infos;
  for (const auto& a : algorithms) infos.push_back(FindAlgorithm(a));
  std::stable_sort(infos.begin(), infos.end(),
                   [](const auto& x, const auto& y) { return x.ordinal < y.ordinal; });

  const std::size_t nd = datasets.size(), na = infos.size();
  std::vector<PerformanceTable> tables(indices.size());
  for (std::size_t m = 0; m < indices.size(); ++m) {
    PerformanceTable& t = tables[m];
    t.measure = std::string(IndexName(indices[m]));
    t.repeats = options.repeats;
    t.master_seed = options.master_seed;
    for (const auto& d : datasets) t.datasets.push_back(d.name);
    for (const auto& info : infos) t.algorithms.push_back(info.name);
    t.scores.assign(nd, std::vector<std::optional<double>>(na));
    t.params.assign(nd, std::vector<std::string>(na, "-"));
  }

  // One context per dataset, built lazily by the first cell that needs it.
  std::vector<std::unique_ptr<IndexContext>> contexts(nd);
  ParallelFor(nd, options.jobs, [&](std::size_t d) {
    contexts[d] = std::make_unique<IndexContext>(datasets[d]);
  });
  ParallelFor(nd * na, options.jobs, [&](std::size_t cell) {
    const std::size_t d = cell / na, a = cell % na;
    const NumericDataset& ds = datasets[d];
    std::vector<std::optional<TuneResult>> results;
    try {
      results = TuneMany(ds, *contexts[d], infos[a].name, indices, options.grid,
                         options.repeats,
                         CellSeed(options.master_seed, ds.name, infos[a].ordinal),
                         options.counters);
    } catch (const Error&) {
      return;  // recorded as undefined
    }
    for (std::size_t m = 0; m < indices.size(); ++m) {
      if (!results[m]) continue;
      tables[m].scores[d][a] = results[m]->score;
      tables[m].params[d][a] = results[m]->params.ToString();
    }
  });
  for (std::size_t m = 0; m < indices.size(); ++m) {
    tables[m].Rerank(GetOrientation(indices[m]));
  }
  return tables;
}

PerformanceTable EvaluateAll(std::span<const NumericDataset> datasets,
                             std::span<const std::string> algorithms,
                             IndexId index, const EvaluateOptions& options) {
  const IndexId ids[] = {index};
  return std::move(EvaluateMany(datasets, algorithms, ids, options)[0]);
}

PerformanceTable AverageRanking(std::span<const PerformanceTable> tables) {
  if (tables.size() < 2) {
    throw Error(ErrorCode::kMismatchedAxes,
                "average ranking needs at least two tables");
  }
  const PerformanceTable& first = tables[0];
  for (const auto& t : tables) {
    if (t.datasets != first.datasets || t.algorithms != first.algorithms) {
      throw Error(ErrorCode::kMismatchedAxes,
                  "tables " + first.measure + " and " + t.measure +
                      " do not share datasets and algorithms");
    }
  }
  PerformanceTable out;
  out.measure = std::string(kAverageRanking);
  out.repeats = first.repeats;
  out.master_seed = first.master_seed;
  out.datasets = first.datasets;
  out.algorithms = first.algorithms;
  const std::size_t nd = first.num_datasets(), na = first.num_algorithms();
  out.scores.assign(nd, std::vector<std::optional<double>>(na));
  out.params.assign(nd, std::vector<std::string>(na, "-"));
  for (std::size_t d = 0; d < nd; ++d) {
    for (std::size_t a = 0; a < na; ++a) {
      double sum = 0.0;
      for (const auto& t : tables) sum += t.ranks[d][a];
      out.scores[d][a] = sum / static_cast<double>(tables.size());
    }
  }
  out.Rerank(Orientation::kMinimize);
  return out;
}

std::vector<std::pair<std::string, std::string>> LabelPairs(
    const PerformanceTable& t) {
  std::vector<std::pair<std::string, std::string>> pairs;
  for (std::size_t d = 0; d < t.num_datasets(); ++d) {
    pairs.emplace_back(t.datasets[d], t.best_name(d));
  }
  return pairs;
}

// Text layout:
//   clustrec-performance<TAB>1
//   measure / repeats / master_seed lines
//   algorithms<TAB>name...
//   one line per dataset: name<TAB>best<TAB>score|rank|params per algorithm
// with "NA" for an undefined score.
std::string PerformanceTable::Serialize() const {
  std::ostringstream out;
  out << "clustrec-performance\t1\n";
  out << "measure\t" << measure << "\n";
  out << "repeats\t" << repeats << "\n";
  out << "master_seed\t" << master_seed << "\n";
  out << "algorithms";
  for (const auto& a : algorithms) out << '\t' << CheckField(a);
  out << "\n";
  for (std::size_t d = 0; d < datasets.size(); ++d) {
    out << CheckField(datasets[d]) << '\t' << algorithms[best[d]];
    for (std::size_t a = 0; a < algorithms.size(); ++a) {
      out << '\t' << (scores[d][a] ? FormatDouble(*scores[d][a]) : "NA") << '|'
          << FormatDouble(ranks[d][a]) << '|' << params[d][a];
    }
    out << "\n";
  }
  return out.str();
}

PerformanceTable PerformanceTable::Parse(const std::string& text) {
  const auto lines = SplitLines(text);
  auto corrupt = [](const std::string& why) {
    return Error(ErrorCode::kCorruptArtifact, "performance table: " + why);
  };
  if (lines.size() < 5 ||
      lines[0] != "clustrec-performance\t1") {
    throw corrupt("missing header");
  }
  PerformanceTable t;
  auto field = [&](std::size_t i, std::string_view key) {
    const auto parts = Split(lines[i], '\t');
    if (parts.size() != 2 || parts[0] != key) throw corrupt("bad " + std::string(key));
    return parts[1];
  };
  t.measure = field(1, "measure");
  t.repeats = static_cast<int>(ParseInt(field(2, "repeats")));
  t.master_seed = ParseU64(field(3, "master_seed"));
  auto header = Split(lines[4], '\t');
  if (header.empty() || header[0] != "algorithms") throw corrupt("bad algorithms");
  t.algorithms.assign(header.begin() + 1, header.end());
  const std::size_t na = t.algorithms.size();
  for (std::size_t i = 5; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    const auto parts = Split(lines[i], '\t');
    if (parts.size() != na + 2) throw corrupt("ragged row " + std::to_string(i));
    t.datasets.push_back(parts[0]);
    const auto it = std::find(t.algorithms.begin(), t.algorithms.end(), parts[1]);
    if (it == t.algorithms.end()) throw corrupt("unknown best " + parts[1]);
    t.best.push_back(static_cast<int>(it - t.algorithms.begin()));
    std::vector<std::optional<double>> sc;
    std::vector<double> rk;
    std::vector<std::string> pr;
    for (std::size_t a = 0; a < na; ++a) {
      const auto cell = Split(parts[a + 2], '|');
      if (cell.size() != 3) throw corrupt("bad cell");
      sc.push_back(cell[0] == "NA" ? std::nullopt
                                   : std::optional<double>(ParseDouble(cell[0])));
      rk.push_back(ParseDouble(cell[1]));
      pr.push_back(cell[2]);
    }
    t.scores.push_back(std::move(sc));
    t.ranks.push_back(std::move(rk));
    t.params.push_back(std::move(pr));
  }
  return t;
}

}  // namespace clustrec
