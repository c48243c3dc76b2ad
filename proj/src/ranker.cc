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

#include "clustrec/ranker.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

#include "clustrec/error.hpp"
#include "clustrec/serialize.hpp"

namespace clustrec {
namespace {

// Registered ordinal, or the position in the list for names outside the
// registry.
int OrdinalOf(const std::string& name, std::size_t position) {
  for (const auto& info : SupportedAlgorithms()) {
    if (info.name == name) return info.ordinal;
  }
  return static_cast<int>(position);
}

// Floor on the summed curvature of a leaf, so a leaf whose pairs are all
// resolved does not take a huge Newton step.
constexpr double kMinCurvature = 1e-3;

struct SplitChoice {
  int feature = -1;
  double threshold = 0.0;
  double gain = 0.0;
};

class TreeBuilder {
 public:
  TreeBuilder(const Eigen::MatrixXd& x,
              const std::vector<std::vector<int>>& sorted, int depth)
      : x_(x), sorted_(sorted), depth_(depth), node_of_(x.rows()) {}

  RegressionTree Build(const std::vector<double>& target,
                       const std::vector<double>& hessian) {
    target_ = &target;
    hessian_ = &hessian;
    RegressionTree tree;
    std::vector<int> all(x_.rows());
    std::iota(all.begin(), all.end(), 0);
    Grow(tree, all, 0);
    return tree;
  }

 private:
  int Grow(RegressionTree& tree, const std::vector<int>& rows, int level) {
    const int id = static_cast<int>(tree.nodes.size());
    tree.nodes.emplace_back();
    double sum = 0.0, curvature = 0.0;
    for (int r : rows) {
      sum += (*target_)[r];
      curvature += (*hessian_)[r];
    }
    tree.nodes[id].value = sum / std::max(curvature, kMinCurvature);
    if (level >= depth_ || rows.size() < 2) return id;
    const SplitChoice best = FindSplit(rows, sum);
    if (best.feature < 0) return id;
    std::vector<int> left, right;
    for (int r : rows) {
      (x_(r, best.feature) <= best.threshold ? left : right).push_back(r);
    }
    tree.nodes[id].feature = best.feature;
    tree.nodes[id].threshold = best.threshold;
    const int l = Grow(tree, left, level + 1);
    const int rr = Grow(tree, right, level + 1);
    tree.nodes[id].left = l;
    tree.nodes[id].right = rr;
    return id;
  }

  // Largest squared-error reduction; ties keep the lowest feature, then the
  // lowest threshold.
  SplitChoice FindSplit(const std::vector<int>& rows, double total) {
    const std::uint32_t stamp = ++stamp_;
    for (int r : rows) node_of_[r] = stamp;
    const auto n = static_cast<double>(rows.size());
    const double parent = total * total / n;
    SplitChoice best;
    for (std::size_t f = 0; f < sorted_.size(); ++f) {
      double left_sum = 0.0;
      double left_n = 0.0;
      int prev = -1;
      for (int r : sorted_[f]) {
        if (node_of_[r] != stamp) continue;
        if (prev >= 0 && x_(r, f) > x_(prev, f)) {
          const double right_sum = total - left_sum;
          const double gain = left_sum * left_sum / left_n +
                              right_sum * right_sum / (n - left_n) - parent;
          if (gain > best.gain) {
            const double a = x_(prev, f), b = x_(r, f);
            double t = a + (b - a) / 2.0;
            if (!(t < b)) t = a;
            best = {static_cast<int>(f), t, gain};
          }
        }
        left_sum += (*target_)[r];
        left_n += 1.0;
        prev = r;
      }
    }
    return best;
  }

  const Eigen::MatrixXd& x_;
  const std::vector<std::vector<int>>& sorted_;
  int depth_;
  const std::vector<double>* target_ = nullptr;
  const std::vector<double>* hessian_ = nullptr;
  std::vector<std::uint32_t> node_of_;
  std::uint32_t stamp_ = 0;
};

}  // namespace

Eigen::RowVectorXd InstanceFeatures(const Eigen::RowVectorXd& meta,
                                    int ordinal) {
  Eigen::RowVectorXd x(meta.size() + 1);
  x << meta, static_cast<double>(ordinal);
  return x;
}

std::vector<MetaInstance> AssembleTrainingSet(const FeatureMap& features,
                                              const PerformanceTable& table) {
  std::vector<MetaInstance> out;
  const auto na = static_cast<double>(table.num_algorithms());
  for (std::size_t d = 0; d < table.num_datasets(); ++d) {
    const auto it = features.find(table.datasets[d]);
    if (it == features.end()) {
      throw Error(ErrorCode::kMissingEmbedding,
                  "no meta-features for dataset " + table.datasets[d]);
    }
    for (std::size_t a = 0; a < table.num_algorithms(); ++a) {
      const int ordinal = OrdinalOf(table.algorithms[a], a);
      out.push_back({InstanceFeatures(it->second, ordinal),
                     na - table.ranks[d][a] + 1.0, table.datasets[d], ordinal});
    }
  }
  return out;
}

void RankerConfig::Validate() const {
  if (trees < 1 || depth < 1 || !(shrinkage > 0.0)) {
    throw Error(ErrorCode::kInvalidParams, "invalid ranker config: " + ToString());
  }
}

std::string RankerConfig::ToString() const {
  std::ostringstream out;
  out << "trees=" << trees << ";depth=" << depth
      << ";shrinkage=" << FormatDouble(shrinkage) << ";seed=" << seed;
  return out.str();
}

double RegressionTree::Predict(const Eigen::RowVectorXd& x) const {
  int id = 0;
  while (nodes[id].feature >= 0) {
    id = x(nodes[id].feature) <= nodes[id].threshold ? nodes[id].left
                                                     : nodes[id].right;
  }
  return nodes[id].value;
}

double RankerModel::Score(const Eigen::RowVectorXd& x) const {
  if (x.size() != feature_count) {
    throw Error(ErrorCode::kDimensionMismatch,
                "ranker expects " + std::to_string(feature_count) +
                    " features, got " + std::to_string(x.size()));
  }
  double s = 0.0;
  for (const auto& t : trees) s += config.shrinkage * t.Predict(x);
  return s;
}

std::vector<int> RankerModel::SplitFeatures() const {
  std::set<int> used;
  for (const auto& t : trees) {
    for (const auto& n : t.nodes) {
      if (n.feature >= 0) used.insert(n.feature);
    }
  }
  return {used.begin(), used.end()};
}

std::string RankerModel::Serialize() const {
  std::ostringstream out;
  out << "clustrec-ranker\t1\n";
  out << "features\t" << feature_count << "\n";
  out << "config\t" << config.ToString() << "\n";
  out << "trees\t" << trees.size() << "\n";
  for (const auto& t : trees) {
    out << "tree\t" << t.nodes.size() << "\n";
    for (const auto& n : t.nodes) {
      out << n.feature << '\t' << FormatDouble(n.threshold) << '\t' << n.left
          << '\t' << n.right << '\t' << FormatDouble(n.value) << "\n";
    }
  }
  return out.str();
}

RankerModel RankerModel::Parse(const std::string& text) {
  const auto lines = SplitLines(text);
  auto corrupt = [](const std::string& why) {
    return Error(ErrorCode::kCorruptArtifact, "ranker model: " + why);
  };
  if (lines.size() < 4 || lines[0] != "clustrec-ranker\t1") {
    throw corrupt("missing header");
  }
  auto value = [&](std::size_t i, std::string_view key) {
    const auto parts = Split(lines[i], '\t');
    if (parts.size() != 2 || parts[0] != key) throw corrupt("bad " + std::string(key));
    return parts[1];
  };
  RankerModel m;
  m.feature_count = static_cast<int>(ParseInt(value(1, "features")));
  for (const auto& kv : Split(value(2, "config"), ';')) {
    const auto p = Split(kv, '=');
    if (p.size() != 2) throw corrupt("bad config entry");
    if (p[0] == "trees") m.config.trees = static_cast<int>(ParseInt(p[1]));
    else if (p[0] == "depth") m.config.depth = static_cast<int>(ParseInt(p[1]));
    else if (p[0] == "shrinkage") m.config.shrinkage = ParseDouble(p[1]);
    else if (p[0] == "seed") m.config.seed = ParseU64(p[1]);
    else throw corrupt("unknown config key " + p[0]);
  }
  const auto count = static_cast<std::size_t>(ParseInt(value(3, "trees")));
  std::size_t line = 4;
  for (std::size_t t = 0; t < count; ++t) {
    if (line >= lines.size()) throw corrupt("truncated");
    const auto nodes = static_cast<std::size_t>(ParseInt(value(line++, "tree")));
    RegressionTree tree;
    for (std::size_t k = 0; k < nodes; ++k) {
      if (line >= lines.size()) throw corrupt("truncated");
      const auto p = Split(lines[line++], '\t');
      if (p.size() != 5) throw corrupt("bad node");
      TreeNode n;
      n.feature = static_cast<int>(ParseInt(p[0]));
      n.threshold = ParseDouble(p[1]);
      n.left = static_cast<int>(ParseInt(p[2]));
      n.right = static_cast<int>(ParseInt(p[3]));
      n.value = ParseDouble(p[4]);
      const auto limit = static_cast<int>(nodes);
      if (n.feature >= m.feature_count ||
          (n.feature >= 0 && (n.left <= 0 || n.left >= limit || n.right <= 0 ||
                              n.right >= limit))) {
        throw corrupt("node out of range");
      }
      tree.nodes.push_back(n);
    }
    if (tree.nodes.empty()) throw corrupt("empty tree");
    m.trees.push_back(std::move(tree));
  }
  if (line != lines.size()) throw corrupt("trailing lines");
  return m;
}

RankerModel TrainRanker(std::vector<MetaInstance> instances,
                        const RankerConfig& config) {
  config.Validate();
  if (instances.empty()) {
    throw Error(ErrorCode::kDegenerateGroups, "no training instances");
  }
  std::stable_sort(instances.begin(), instances.end(),
                   [](const MetaInstance& a, const MetaInstance& b) {
                     return a.group != b.group ? a.group < b.group
                                               : a.ordinal < b.ordinal;
                   });
  const auto n = static_cast<Eigen::Index>(instances.size());
  const auto f = instances[0].features.size();
  Eigen::MatrixXd x(n, f);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (instances[i].features.size() != f) {
      throw Error(ErrorCode::kDimensionMismatch, "ragged meta-feature vectors");
    }
    x.row(i) = instances[i].features;
  }

  // Ordered pairs (better, worse) within each group.
  std::vector<std::pair<int, int>> pairs;
  std::size_t groups = 0;
  for (Eigen::Index start = 0; start < n;) {
    Eigen::Index end = start;
    while (end < n && instances[end].group == instances[start].group) ++end;
    ++groups;
    for (Eigen::Index i = start; i < end; ++i) {
      for (Eigen::Index j = start; j < end; ++j) {
        if (instances[i].relevance > instances[j].relevance) {
          pairs.emplace_back(static_cast<int>(i), static_cast<int>(j));
        }
      }
    }
    start = end;
  }
  if (groups < 2 || pairs.empty()) {
    throw Error(ErrorCode::kDegenerateGroups,
                "need at least two groups and one ordered pair");
  }

  std::vector<std::vector<int>> sorted(f);
  for (Eigen::Index c = 0; c < f; ++c) {
    auto& order = sorted[c];
    order.resize(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return x(a, c) < x(b, c); });
  }

  RankerModel model;
  model.feature_count = static_cast<int>(f);
  model.config = config;
  TreeBuilder builder(x, sorted, config.depth);
  std::vector<double> score(n, 0.0), gradient(n), hessian(n);
  for (int t = 0; t < config.trees; ++t) {
    std::fill(gradient.begin(), gradient.end(), 0.0);
    std::fill(hessian.begin(), hessian.end(), 0.0);
    for (auto [i, j] : pairs) {
      const double lambda = 1.0 / (1.0 + std::exp(score[i] - score[j]));
      gradient[i] += lambda;
      gradient[j] -= lambda;
      hessian[i] += lambda * (1.0 - lambda);
      hessian[j] += lambda * (1.0 - lambda);
    }
    RegressionTree tree = builder.Build(gradient, hessian);
    for (Eigen::Index i = 0; i < n; ++i) {
      score[i] += config.shrinkage * tree.Predict(x.row(i));
    }
    model.trees.push_back(std::move(tree));
  }
  return model;
}

RankedRecommendation Recommend(const RankerModel& model,
                               const Eigen::RowVectorXd& meta,
                               std::span<const std::string> algorithms,
                               const std::string& dataset,
                               const std::string& measure) {
  RankedRecommendation rec;
  rec.dataset = dataset;
  rec.measure = measure;
  for (std::size_t a = 0; a < algorithms.size(); ++a) {
    const int ordinal = OrdinalOf(algorithms[a], a);
    rec.entries.push_back(
        {algorithms[a], ordinal, model.Score(InstanceFeatures(meta, ordinal))});
  }
  std::stable_sort(rec.entries.begin(), rec.entries.end(),
                   [](const RecommendationEntry& a, const RecommendationEntry& b) {
                     return a.score != b.score ? a.score > b.score
                                               : a.ordinal < b.ordinal;
                   });
  return rec;
}

}  // namespace clustrec
