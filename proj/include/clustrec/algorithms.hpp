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

#include <atomic>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "clustrec/dataset.hpp"
#include "clustrec/indices.hpp"
#include "clustrec/random.hpp"

namespace clustrec {

// Capability record of one candidate algorithm. Ordinals are dense, stable
// and double as the M_a feature of the meta-ranker.
struct AlgorithmInfo {
  std::string name;
  int ordinal = 0;
  bool deterministic = false;
  bool needs_k = true;
  bool density_based = false;
};

// Built-in table: MST SL AL CL WL KM KHM KKM MBK FC DBSCAN MS GMF GMT GMD,
// ordinals 0..14, followed by anything added through RegisterAlgorithm.
std::vector<AlgorithmInfo> SupportedAlgorithms();
AlgorithmInfo FindAlgorithm(std::string_view name);

// Tab-separated capability and index table (the machine-readable contract).
std::string CapabilityTable();

struct ParamPoint {
  int k = 0;
  double eps = 0.0;
  int min_pts = 0;
  double bandwidth = 0.0;

  std::string ToString() const;
  static ParamPoint Parse(std::string_view text);
  bool operator==(const ParamPoint&) const = default;
};

struct ClusteringSolution {
  std::vector<int> labels;  // dense 0..k_effective-1, -1 for noise
  int k_effective = 0;
  std::uint64_t seed = 0;
  bool converged = true;  // false when an iteration cap was hit
  int iterations = 0;
};

// Relabels clusters by first appearance and fills k_effective.
void Canonicalize(ClusteringSolution& s);

struct HyperparamGrid {
  int k_min = 2;
  int k_max = 25;
  std::vector<double> eps_quantiles = {0.10, 0.25, 0.50};
  std::vector<int> min_pts = {3, 5};
  std::vector<double> bandwidth_quantiles = {0.10, 0.25, 0.50};

  void Validate() const;
};

inline constexpr int kMaxIterations = 300;
inline constexpr double kTolerance = 1e-6;
inline constexpr double kHarmonicExponent = 3.5;
inline constexpr double kCovarianceRegularization = 1e-6;

// One algorithm bound to one dataset. Prepare() holds whatever can be shared
// between runs (distance matrices, dendrograms, kernels); Run() is const and
// deterministic in (params, seed).
class Clusterer {
 public:
  virtual ~Clusterer() = default;
  virtual void Prepare(const NumericDataset& d) = 0;
  virtual ClusteringSolution Run(const ParamPoint& params,
                                 std::uint64_t seed) const = 0;
};

using ClustererFactory = std::function<std::unique_ptr<Clusterer>()>;

// Plugin point. The ordinal field of `info` is ignored and assigned.
AlgorithmInfo RegisterAlgorithm(AlgorithmInfo info, ClustererFactory factory);
std::unique_ptr<Clusterer> MakeClusterer(std::string_view name);

ClusteringSolution RunAlgorithm(const NumericDataset& d,
                                std::string_view algorithm,
                                const ParamPoint& params, std::uint64_t seed);

// Concrete grid for one algorithm on one dataset: K values for k-based
// methods (capped at n-1), eps x minPts for DBSCAN, bandwidths for MS.
std::vector<ParamPoint> GridPoints(const NumericDataset& d,
                                   const AlgorithmInfo& info,
                                   const HyperparamGrid& grid);

struct TuneResult {
  ParamPoint params;
  ClusteringSolution solution;  // the first repeat at the best grid point
  double score = 0.0;           // mean over repeats
};

struct TuneCounters {
  std::atomic<long> runs{0};
};

// Exhaustive grid search scored by `index`. Stochastic algorithms average
// `repeats` seeded runs per grid point (seed of repeat r is
// MixSeed(seed, r)); deterministic ones run once. Ties go to the earlier grid
// point, i.e. the smaller K.
TuneResult TuneK(const NumericDataset& d, std::string_view algorithm,
                 IndexId index, const HyperparamGrid& grid, int repeats,
                 std::uint64_t seed);

// TuneK for several indices at once over shared runs. Entry i is empty when
// every grid point failed or was undefined for indices[i].
std::vector<std::optional<TuneResult>> TuneMany(
    const NumericDataset& d, const IndexContext& ctx,
    std::string_view algorithm, std::span<const IndexId> indices,
    const HyperparamGrid& grid, int repeats, std::uint64_t seed,
    TuneCounters* counters = nullptr);

namespace detail {
// Factories for the built-in families.
std::unique_ptr<Clusterer> MakeMst();
std::unique_ptr<Clusterer> MakeLinkage(char method);  // 'S','A','C','W'
std::unique_ptr<Clusterer> MakeKMeans();
std::unique_ptr<Clusterer> MakeKHarmonicMeans();
std::unique_ptr<Clusterer> MakeKernelKMeans();
std::unique_ptr<Clusterer> MakeMiniBatchKMeans();
std::unique_ptr<Clusterer> MakeFuzzyCMeans();
std::unique_ptr<Clusterer> MakeDbscan();
std::unique_ptr<Clusterer> MakeMeanShift();
std::unique_ptr<Clusterer> MakeGaussianMixture(char covariance);  // 'F','T','D'

using RowMatrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

Eigen::MatrixXd PairwiseDistances(const Eigen::MatrixXd& x);
// Upper-triangle distances, value at quantile q by linear interpolation.
double DistanceQuantile(const Eigen::MatrixXd& distances, double q);
// k-means++ seeding; returns k x m centers.
RowMatrix KMeansPlusPlus(const RowMatrix& x, int k, Rng& rng);
void CheckK(const ParamPoint& p, Eigen::Index n, std::string_view algorithm);
}  // namespace detail

}  // namespace clustrec
