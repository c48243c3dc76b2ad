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

// Internal clustering validity indices.
//
// Definitions (points with label -1 are removed first; k is the number of
// remaining clusters, c_k the centroid of cluster k, d the Euclidean
// distance):
//
//   BezdekPal        generalized Dunn GD(4,1): min centroid distance over
//                    max cluster diameter.                           maximize
//   Dunn             min distance between points of different clusters over
//                    max cluster diameter.                           maximize
//   CalinskiHarabasz (B / (k-1)) / (W / (N-k)) with B, W the between and
//                    within sums of squares.                         maximize
//   Silhouette       mean of (b-a)/max(a,b); singletons score 0.     maximize
//   MilliganCooper   point-biserial correlation between pair distances and
//                    the between-cluster indicator.                  maximize
//   DaviesBouldin    mean over clusters of max (S_i+S_j)/d(c_i,c_j), S the
//                    mean distance to the centroid.                  minimize
//   HandlKnowlesKell connectivity: sum over points of 1/j for each of the L=10
//                    nearest neighbours j placed in another cluster. minimize
//   HubertLevin      C-index (S_w - S_min) / (S_max - S_min).        minimize
//   SDScat           mean over clusters of ||var(cluster)|| / ||var(data)||,
//                    variances taken per feature.                    minimize
//   XieBeni          within sum of squares over N times the min squared
//                    centroid distance.                              minimize

#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "clustrec/dataset.hpp"

namespace clustrec {

enum class IndexId {
  kBezdekPal,
  kDunn,
  kCalinskiHarabasz,
  kSilhouette,
  kMilliganCooper,
  kDaviesBouldin,
  kHandlKnowlesKell,
  kHubertLevin,
  kSDScat,
  kXieBeni,
};

enum class Orientation { kMaximize, kMinimize };

std::span<const IndexId> AllIndices();
std::string_view IndexName(IndexId id);
std::optional<IndexId> ParseIndex(std::string_view name);
Orientation GetOrientation(IndexId id);

inline constexpr int kConnectivityNeighbours = 10;

struct IndexScore {
  double value = 0.0;
  bool defined = false;
  std::string reason;  // set when !defined

  static IndexScore Undefined(std::string why) {
    return {0.0, false, std::move(why)};
  }
};

// Pairwise distances and neighbour lists of one dataset, shared across every
// solution scored on it.
class IndexContext {
 public:
  explicit IndexContext(const NumericDataset& d);

  const Eigen::MatrixXd& points() const { return points_; }
  const Eigen::MatrixXd& distances() const { return distances_; }
  // Neighbours of i by increasing distance (ties by index), excluding i.
  const std::vector<std::vector<int>>& neighbours() const {
    return neighbours_;
  }
  // Upper-triangle distances in ascending order.
  const std::vector<double>& sorted_distances() const {
    return sorted_distances_;
  }

 private:
  Eigen::MatrixXd points_;
  Eigen::MatrixXd distances_;
  std::vector<std::vector<int>> neighbours_;
  std::vector<double> sorted_distances_;
};

IndexScore ComputeIndex(const IndexContext& ctx, std::span<const int> labels,
                        IndexId id);
IndexScore ComputeIndex(const NumericDataset& d, std::span<const int> labels,
                        IndexId id);

// True when `a` is strictly better than `b` under the orientation.
inline bool Better(Orientation o, double a, double b) {
  return o == Orientation::kMaximize ? a > b : a < b;
}

}  // namespace clustrec
