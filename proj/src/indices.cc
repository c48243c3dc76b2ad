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

#include "clustrec/indices.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

#include "clustrec/error.hpp"

namespace clustrec {
namespace {

constexpr std::array<IndexId, 10> kAll = {
    IndexId::kBezdekPal,        IndexId::kDunn,
    IndexId::kCalinskiHarabasz, IndexId::kSilhouette,
    IndexId::kMilliganCooper,   IndexId::kDaviesBouldin,
    IndexId::kHandlKnowlesKell, IndexId::kHubertLevin,
    IndexId::kSDScat,           IndexId::kXieBeni,
};

constexpr std::array<std::string_view, 10> kNames = {
    "BezdekPal",        "Dunn",        "CalinskiHarabasz", "Silhouette",
    "MilliganCooper",   "DaviesBouldin", "HandlKnowlesKell", "HubertLevin",
    "SDScat",           "XieBeni",
};

// Non-noise points with labels compacted to 0..k-1 by first appearance, so
// every accumulation below runs in an order independent of the input ids.
struct Partition {
  std::vector<int> point;   // original row index
  std::vector<int> label;   // compact label of point[i]
  std::vector<int> of_row;  // compact label per original row, -1 for noise
  std::vector<std::vector<int>> members;  // original row indices
  int k = 0;
};

Partition MakePartition(std::span<const int> labels) {
  Partition p;
  p.of_row.assign(labels.size(), -1);
  std::map<int, int> remap;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] < 0) continue;
    auto [it, inserted] = remap.emplace(labels[i], p.k);
    if (inserted) {
      ++p.k;
      p.members.emplace_back();
    }
    p.point.push_back(static_cast<int>(i));
    p.label.push_back(it->second);
    p.of_row[i] = it->second;
    p.members[it->second].push_back(static_cast<int>(i));
  }
  return p;
}

Eigen::MatrixXd Centroids(const Eigen::MatrixXd& x, const Partition& p) {
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(p.k, x.cols());
  for (int k = 0; k < p.k; ++k) {
    for (int i : p.members[k]) c.row(k) += x.row(i);
    c.row(k) /= static_cast<double>(p.members[k].size());
  }
  return c;
}

double MaxDiameter(const Eigen::MatrixXd& dist, const Partition& p) {
  double diam = 0.0;
  for (const auto& m : p.members) {
    for (std::size_t a = 0; a < m.size(); ++a) {
      for (std::size_t b = a + 1; b < m.size(); ++b) {
        diam = std::max(diam, dist(m[a], m[b]));
      }
    }
  }
  return diam;
}

double MinCentroidDistance(const Eigen::MatrixXd& c, bool squared) {
  double best = std::numeric_limits<double>::infinity();
  for (Eigen::Index a = 0; a < c.rows(); ++a) {
    for (Eigen::Index b = a + 1; b < c.rows(); ++b) {
      const double d2 = (c.row(a) - c.row(b)).squaredNorm();
      best = std::min(best, squared ? d2 : std::sqrt(d2));
    }
  }
  return best;
}

IndexScore Defined(double v) { return {v, true, {}}; }

IndexScore BezdekPal(const IndexContext& ctx, const Partition& p) {
  const double diam = MaxDiameter(ctx.distances(), p);
  if (diam <= 0.0) return IndexScore::Undefined("every cluster has zero diameter");
  const Eigen::MatrixXd c = Centroids(ctx.points(), p);
  return Defined(MinCentroidDistance(c, false) / diam);
}

IndexScore Dunn(const IndexContext& ctx, const Partition& p) {
  const Eigen::MatrixXd& dist = ctx.distances();
  const double diam = MaxDiameter(dist, p);
  if (diam <= 0.0) return IndexScore::Undefined("every cluster has zero diameter");
  double sep = std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < p.point.size(); ++a) {
    for (std::size_t b = a + 1; b < p.point.size(); ++b) {
      if (p.label[a] != p.label[b]) {
        sep = std::min(sep, dist(p.point[a], p.point[b]));
      }
    }
  }
  return Defined(sep / diam);
}

IndexScore CalinskiHarabasz(const IndexContext& ctx, const Partition& p) {
  const Eigen::MatrixXd& x = ctx.points();
  const auto n = static_cast<double>(p.point.size());
  if (static_cast<int>(p.point.size()) == p.k) {
    return IndexScore::Undefined("every point is its own cluster");
  }
  Eigen::RowVectorXd mean = Eigen::RowVectorXd::Zero(x.cols());
  for (int i : p.point) mean += x.row(i);
  mean /= n;
  const Eigen::MatrixXd c = Centroids(x, p);
  double between = 0.0, within = 0.0;
  for (int k = 0; k < p.k; ++k) {
    between += static_cast<double>(p.members[k].size()) *
               (c.row(k) - mean).squaredNorm();
    for (int i : p.members[k]) within += (x.row(i) - c.row(k)).squaredNorm();
  }
  if (within <= 0.0) return IndexScore::Undefined("zero within-cluster scatter");
  return Defined((between / (p.k - 1)) / (within / (n - p.k)));
}

IndexScore Silhouette(const IndexContext& ctx, const Partition& p) {
  const Eigen::MatrixXd& dist = ctx.distances();
  double total = 0.0;
  std::vector<double> sums(p.k);
  for (std::size_t a = 0; a < p.point.size(); ++a) {
    const int own = p.label[a];
    if (p.members[own].size() == 1) continue;  // s(i) = 0
    std::fill(sums.begin(), sums.end(), 0.0);
    for (std::size_t b = 0; b < p.point.size(); ++b) {
      sums[p.label[b]] += dist(p.point[a], p.point[b]);
    }
    const double ai =
        sums[own] / static_cast<double>(p.members[own].size() - 1);
    double bi = std::numeric_limits<double>::infinity();
    for (int k = 0; k < p.k; ++k) {
      if (k != own) {
        bi = std::min(bi, sums[k] / static_cast<double>(p.members[k].size()));
      }
    }
    const double denom = std::max(ai, bi);
    if (denom > 0.0) total += (bi - ai) / denom;
  }
  return Defined(total / static_cast<double>(p.point.size()));
}

IndexScore MilliganCooper(const IndexContext& ctx, const Partition& p) {
  const Eigen::MatrixXd& dist = ctx.distances();
  double sum_w = 0.0, sum_b = 0.0, sum_sq = 0.0;
  double n_w = 0.0, n_b = 0.0;
  for (std::size_t a = 0; a < p.point.size(); ++a) {
    for (std::size_t b = a + 1; b < p.point.size(); ++b) {
      const double d = dist(p.point[a], p.point[b]);
      sum_sq += d * d;
      if (p.label[a] == p.label[b]) {
        sum_w += d;
        n_w += 1.0;
      } else {
        sum_b += d;
        n_b += 1.0;
      }
    }
  }
  if (n_w == 0.0) return IndexScore::Undefined("no within-cluster pairs");
  const double n_t = n_w + n_b;
  const double mean = (sum_w + sum_b) / n_t;
  const double var = sum_sq / n_t - mean * mean;
  if (!(var > 0.0)) return IndexScore::Undefined("all distances are equal");
  const double mw = sum_w / n_w, mb = sum_b / n_b;
  return Defined((mb - mw) * std::sqrt(n_w * n_b) / n_t / std::sqrt(var));
}

IndexScore DaviesBouldin(const IndexContext& ctx, const Partition& p) {
  const Eigen::MatrixXd& x = ctx.points();
  const Eigen::MatrixXd c = Centroids(x, p);
  std::vector<double> scatter(p.k, 0.0);
  for (int k = 0; k < p.k; ++k) {
    for (int i : p.members[k]) scatter[k] += (x.row(i) - c.row(k)).norm();
    scatter[k] /= static_cast<double>(p.members[k].size());
  }
  double total = 0.0;
  for (int a = 0; a < p.k; ++a) {
    double worst = 0.0;
    for (int b = 0; b < p.k; ++b) {
      if (a == b) continue;
      const double sep = (c.row(a) - c.row(b)).norm();
      if (sep <= 0.0) return IndexScore::Undefined("coincident centroids");
      worst = std::max(worst, (scatter[a] + scatter[b]) / sep);
    }
    total += worst;
  }
  return Defined(total / p.k);
}

IndexScore Connectivity(const IndexContext& ctx, const Partition& p) {
  const auto& nbrs = ctx.neighbours();
  double total = 0.0;
  for (int i : p.point) {
    int j = 0;
    for (int v : nbrs[i]) {
      if (p.of_row[v] < 0) continue;
      ++j;
      if (p.of_row[v] != p.of_row[i]) total += 1.0 / j;
      if (j == kConnectivityNeighbours) break;
    }
  }
  return Defined(total);
}

IndexScore HubertLevin(const IndexContext& ctx, const Partition& p) {
  const Eigen::MatrixXd& dist = ctx.distances();
  double s_w = 0.0;
  std::size_t n_w = 0;
  for (const auto& m : p.members) {
    for (std::size_t a = 0; a < m.size(); ++a) {
      for (std::size_t b = a + 1; b < m.size(); ++b) {
        s_w += dist(m[a], m[b]);
        ++n_w;
      }
    }
  }
  if (n_w == 0) return IndexScore::Undefined("no within-cluster pairs");
  std::vector<double> local;
  const std::vector<double>* sorted = &ctx.sorted_distances();
  if (p.point.size() != static_cast<std::size_t>(dist.rows())) {
    for (std::size_t a = 0; a < p.point.size(); ++a) {
      for (std::size_t b = a + 1; b < p.point.size(); ++b) {
        local.push_back(dist(p.point[a], p.point[b]));
      }
    }
    std::sort(local.begin(), local.end());
    sorted = &local;
  }
  double s_min = 0.0, s_max = 0.0;
  for (std::size_t i = 0; i < n_w; ++i) {
    s_min += (*sorted)[i];
    s_max += (*sorted)[sorted->size() - n_w + i];
  }
  if (!(s_max > s_min)) return IndexScore::Undefined("S_max equals S_min");
  return Defined((s_w - s_min) / (s_max - s_min));
}

Eigen::VectorXd Variance(const Eigen::MatrixXd& x, std::span<const int> rows) {
  Eigen::RowVectorXd mean = Eigen::RowVectorXd::Zero(x.cols());
  for (int i : rows) mean += x.row(i);
  mean /= static_cast<double>(rows.size());
  Eigen::RowVectorXd var = Eigen::RowVectorXd::Zero(x.cols());
  for (int i : rows) var += (x.row(i) - mean).array().square().matrix();
  return (var / static_cast<double>(rows.size())).transpose();
}

IndexScore SDScat(const IndexContext& ctx, const Partition& p) {
  const Eigen::MatrixXd& x = ctx.points();
  const double whole = Variance(x, p.point).norm();
  if (!(whole > 0.0)) return IndexScore::Undefined("zero data variance");
  double total = 0.0;
  for (const auto& m : p.members) total += Variance(x, m).norm();
  return Defined(total / p.k / whole);
}

IndexScore XieBeni(const IndexContext& ctx, const Partition& p) {
  const Eigen::MatrixXd& x = ctx.points();
  const Eigen::MatrixXd c = Centroids(x, p);
  const double sep = MinCentroidDistance(c, true);
  if (!(sep > 0.0)) return IndexScore::Undefined("coincident centroids");
  double within = 0.0;
  for (int k = 0; k < p.k; ++k) {
    for (int i : p.members[k]) within += (x.row(i) - c.row(k)).squaredNorm();
  }
  return Defined(within / (static_cast<double>(p.point.size()) * sep));
}

}  // namespace

std::span<const IndexId> AllIndices() { return kAll; }

std::string_view IndexName(IndexId id) {
  return kNames[static_cast<std::size_t>(id)];
}

std::optional<IndexId> ParseIndex(std::string_view name) {
  for (std::size_t i = 0; i < kNames.size(); ++i) {
    if (kNames[i] == name) return kAll[i];
  }
  return std::nullopt;
}

Orientation GetOrientation(IndexId id) {
  switch (id) {
    case IndexId::kBezdekPal:
    case IndexId::kDunn:
    case IndexId::kCalinskiHarabasz:
    case IndexId::kSilhouette:
    case IndexId::kMilliganCooper:
      return Orientation::kMaximize;
    default:
      return Orientation::kMinimize;
  }
}

IndexContext::IndexContext(const NumericDataset& d) : points_(d.matrix) {
  const Eigen::Index n = points_.rows();
  distances_.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    distances_(i, i) = 0.0;
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double v = (points_.row(i) - points_.row(j)).norm();
      distances_(i, j) = v;
      distances_(j, i) = v;
      sorted_distances_.push_back(v);
    }
  }
  std::sort(sorted_distances_.begin(), sorted_distances_.end());
  neighbours_.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    auto& v = neighbours_[i];
    for (Eigen::Index j = 0; j < n; ++j) {
      if (j != i) v.push_back(static_cast<int>(j));
    }
    std::stable_sort(v.begin(), v.end(), [&](int a, int b) {
      return distances_(i, a) < distances_(i, b);
    });
  }
}

IndexScore ComputeIndex(const IndexContext& ctx, std::span<const int> labels,
                        IndexId id) {
  if (static_cast<Eigen::Index>(labels.size()) != ctx.points().rows()) {
    throw Error(ErrorCode::kLengthMismatch,
                "label vector length differs from the dataset size");
  }
  const Partition p = MakePartition(labels);
  if (p.k < 2) return IndexScore::Undefined("fewer than two clusters");
  switch (id) {
    case IndexId::kBezdekPal: return BezdekPal(ctx, p);
    case IndexId::kDunn: return Dunn(ctx, p);
    case IndexId::kCalinskiHarabasz: return CalinskiHarabasz(ctx, p);
    case IndexId::kSilhouette: return Silhouette(ctx, p);
    case IndexId::kMilliganCooper: return MilliganCooper(ctx, p);
    case IndexId::kDaviesBouldin: return DaviesBouldin(ctx, p);
    case IndexId::kHandlKnowlesKell: return Connectivity(ctx, p);
    case IndexId::kHubertLevin: return HubertLevin(ctx, p);
    case IndexId::kSDScat: return SDScat(ctx, p);
    case IndexId::kXieBeni: return XieBeni(ctx, p);
  }
  throw Error(ErrorCode::kInternal, "unknown index");
}

IndexScore ComputeIndex(const NumericDataset& d, std::span<const int> labels,
                        IndexId id) {
  return ComputeIndex(IndexContext(d), labels, id);
}

}  // namespace clustrec
