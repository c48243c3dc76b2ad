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

#include "clustrec/config.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

#include "clustrec/error.hpp"
#include "clustrec/serialize.hpp"

namespace clustrec {
namespace {

std::string_view Trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string> List(std::string_view value) {
  std::vector<std::string> out;
  for (const auto& part : Split(value, ',')) {
    const auto t = Trim(part);
    if (!t.empty()) out.emplace_back(t);
  }
  return out;
}

std::string Join(const std::vector<std::string>& v) {
  std::string out;
  for (const auto& s : v) out += (out.empty() ? "" : ",") + s;
  return out;
}

}  // namespace

void RunConfig::Set(std::string_view key, std::string_view raw) {
  const std::string value(Trim(raw));
  auto bad = [&](const std::string& why) {
    return Error(ErrorCode::kConfig,
                 std::string(key) + " = '" + value + "': " + why);
  };
  auto as_int = [&] {
    try {
      return static_cast<int>(ParseInt(value));
    } catch (const Error&) {
      throw bad("expected an integer");
    }
  };
  auto as_double = [&] {
    try {
      return ParseDouble(value);
    } catch (const Error&) {
      throw bad("expected a number");
    }
  };
  auto as_bool = [&] {
    if (value == "true" || value == "1" || value == "yes") return true;
    if (value == "false" || value == "0" || value == "no") return false;
    throw bad("expected true or false");
  };

  if (key == "corpus") corpus = value;
  else if (key == "output") output = value;
  else if (key == "store") store = value;
  else if (key == "label_column") label_column = value;
  else if (key == "measures") {
    measures.clear();
    if (value == "all") {
      measures.assign(AllIndices().begin(), AllIndices().end());
    } else {
      for (const auto& name : List(value)) {
        const auto id = ParseIndex(name);
        if (!id) throw bad("unknown index " + name);
        measures.push_back(*id);
      }
    }
  } else if (key == "average_ranking") average_ranking = as_bool();
  else if (key == "algorithms") {
    algorithms = value == "all" ? std::vector<std::string>{} : List(value);
  } else if (key == "repeats") repeats = as_int();
  else if (key == "k_min") grid.k_min = as_int();
  else if (key == "k_max") grid.k_max = as_int();
  else if (key == "master_seed") {
    try {
      master_seed = ParseU64(value);
    } catch (const Error&) {
      throw bad("expected an unsigned integer");
    }
  } else if (key == "jobs") jobs = as_int();
  else if (key == "pca") pca = as_bool();
  else if (key == "pca_target") pca_target = as_double();
  else if (key == "threshold") threshold = as_double();
  else if (key == "walks") deepwalk.num_walks = as_int();
  else if (key == "walk_length") deepwalk.walk_length = as_int();
  else if (key == "walk_dim") deepwalk.dim = as_int();
  else if (key == "window") deepwalk.window = as_int();
  else if (key == "negatives") deepwalk.negatives = as_int();
  else if (key == "walk_epochs") deepwalk.epochs = as_int();
  else if (key == "walk_lr") deepwalk.lr = as_double();
  else if (key == "gcn_layers") gcn.layers = as_int();
  else if (key == "gcn_embedding") gcn.embedding = as_int();
  else if (key == "gcn_lr") gcn.lr = as_double();
  else if (key == "gcn_epochs") gcn.max_epochs = as_int();
  else if (key == "gcn_patience") gcn.patience = as_int();
  else if (key == "strict_gcn") strict_gcn = as_bool();
  else if (key == "ranker_trees") ranker.trees = as_int();
  else if (key == "ranker_depth") ranker.depth = as_int();
  else if (key == "ranker_shrinkage") ranker.shrinkage = as_double();
  else if (key == "excess_kurtosis") excess_kurtosis = as_bool();
  else throw Error(ErrorCode::kConfig, "unknown config key '" + std::string(key) + "'");
}

void RunConfig::ParseText(std::string_view text) {
  int number = 0;
  for (const auto& raw : SplitLines(text)) {
    ++number;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = Trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorCode::kConfig,
                  "line " + std::to_string(number) + ": expected key = value");
    }
    Set(Trim(line.substr(0, eq)), line.substr(eq + 1));
  }
}

void RunConfig::LoadFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kConfig, "cannot read config file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  ParseText(ss.str());
}

void RunConfig::Validate() const {
  auto fail = [](const std::string& why) { return Error(ErrorCode::kConfig, why); };
  if (!(threshold > 0.0 && threshold < 1.0)) throw fail("threshold must be in (0, 1)");
  if (!(pca_target > 0.0 && pca_target <= 1.0)) throw fail("pca_target must be in (0, 1]");
  if (gcn.layers < 2 || gcn.layers > 6) throw fail("gcn_layers must be in 2..6");
  static constexpr int kEmbeddings[] = {50, 100, 200, 300, 400, 500};
  if (std::find(std::begin(kEmbeddings), std::end(kEmbeddings), gcn.embedding) ==
      std::end(kEmbeddings)) {
    throw fail("gcn_embedding must be one of 50, 100, 200, 300, 400, 500");
  }
  if (!(gcn.lr > 0.0)) throw fail("gcn_lr must be > 0");
  if (gcn.max_epochs < 1 || gcn.patience < 1) {
    throw fail("gcn_epochs and gcn_patience must be >= 1");
  }
  if (repeats < 1) throw fail("repeats must be >= 1");
  if (jobs < 0) throw fail("jobs must be >= 0");
  if (measures.empty() && !average_ranking) throw fail("no measure selected");
  try {
    grid.Validate();
    deepwalk.Validate();
    ranker.Validate();
    for (const auto& a : ResolvedAlgorithms()) FindAlgorithm(a);
  } catch (const Error& e) {
    throw fail(e.what());
  }
  if (ResolvedAlgorithms().size() < 2) throw fail("need at least two algorithms");
}

std::vector<std::string> RunConfig::ResolvedAlgorithms() const {
  if (!algorithms.empty()) return algorithms;
  std::vector<std::string> all;
  for (const auto& info : SupportedAlgorithms()) all.push_back(info.name);
  return all;
}

int RunConfig::ResolvedJobs() const {
  if (jobs > 0) return jobs;
  return std::max(1u, std::thread::hardware_concurrency());
}

std::string RunConfig::StoreRoot() const {
  return store.empty() ? output + "/store" : store;
}

std::string RunConfig::ToText() const {
  std::map<std::string, std::string> kv;
  std::vector<std::string> m;
  for (IndexId id : measures) m.emplace_back(IndexName(id));
  kv["corpus"] = corpus;
  kv["label_column"] = label_column;
  kv["measures"] = Join(m);
  kv["average_ranking"] = average_ranking ? "true" : "false";
  kv["algorithms"] = Join(ResolvedAlgorithms());
  kv["repeats"] = std::to_string(repeats);
  kv["k_min"] = std::to_string(grid.k_min);
  kv["k_max"] = std::to_string(grid.k_max);
  kv["master_seed"] = std::to_string(master_seed);
  kv["pca"] = pca ? "true" : "false";
  kv["pca_target"] = FormatDouble(pca_target);
  kv["threshold"] = FormatDouble(threshold);
  kv["walks"] = std::to_string(deepwalk.num_walks);
  kv["walk_length"] = std::to_string(deepwalk.walk_length);
  kv["walk_dim"] = std::to_string(deepwalk.dim);
  kv["window"] = std::to_string(deepwalk.window);
  kv["negatives"] = std::to_string(deepwalk.negatives);
  kv["walk_epochs"] = std::to_string(deepwalk.epochs);
  kv["walk_lr"] = FormatDouble(deepwalk.lr);
  kv["gcn_layers"] = std::to_string(gcn.layers);
  kv["gcn_embedding"] = std::to_string(gcn.embedding);
  kv["gcn_lr"] = FormatDouble(gcn.lr);
  kv["gcn_epochs"] = std::to_string(gcn.max_epochs);
  kv["gcn_patience"] = std::to_string(gcn.patience);
  kv["strict_gcn"] = strict_gcn ? "true" : "false";
  kv["ranker_trees"] = std::to_string(ranker.trees);
  kv["ranker_depth"] = std::to_string(ranker.depth);
  kv["ranker_shrinkage"] = FormatDouble(ranker.shrinkage);
  kv["excess_kurtosis"] = excess_kurtosis ? "true" : "false";
  std::string out;
  for (const auto& [k, v] : kv) out += k + " = " + v + "\n";
  return out;
}

std::span<const std::string_view> ConfigKeys() {
  static constexpr std::string_view kKeys[] = {
      "corpus",      "output",       "store",          "label_column",
      "measures",    "average_ranking", "algorithms",  "repeats",
      "k_min",       "k_max",        "master_seed",    "jobs",
      "pca",         "pca_target",   "threshold",      "walks",
      "walk_length", "walk_dim",     "window",         "negatives",
      "walk_epochs", "walk_lr",      "gcn_layers",     "gcn_embedding",
      "gcn_lr",      "gcn_epochs",   "gcn_patience",   "strict_gcn",
      "ranker_trees", "ranker_depth", "ranker_shrinkage", "excess_kurtosis",
  };
  return kKeys;
}

std::string ShortHash(std::string_view text) {
  return Sha256Hex(text).substr(0, 16);
}

}  // namespace clustrec
