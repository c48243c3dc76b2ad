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

// Comparison systems: popularity ranking and the distance-based and CaD
// meta-feature vectors.
//
// The 19 meta-features of a vector v with entries in [0, 1]:
//   MF1 mean, MF2 sample variance, MF3 sample std,
//   MF4 skewness  mean((v - mean)^3) / std^3,
//   MF5 kurtosis  mean((v - mean)^4) / std^4 (plain; excess optional),
//   MF6..MF15  percentage of entries in [0, .1], (.1, .2], ..., (.9, 1],
//   MF16..MF19 percentage with |z| in [0, 1), [1, 2), [2, 3), [3, inf),
// where std is the sample std and z = (v - mean) / std. A constant vector
// has zero skewness and kurtosis and all z-scores in [0, 1).

#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "clustrec/dataset.hpp"
#include "clustrec/performance.hpp"

namespace clustrec {

struct PopularityVector {
  std::string measure;
  std::vector<std::string> order;  // most frequent a_best first
  std::vector<int> counts;         // aligned with order
};

// Ranks algorithms by how often they are a_best, descending; ties by column
// (ordinal) order.
PopularityVector PopularityRank(const PerformanceTable& table);
// Same, counting only the given dataset rows.
PopularityVector PopularityRank(const PerformanceTable& table,
                                std::span<const std::size_t> rows);

// Min-max scaling to [0, 1]; a constant vector maps to zeros.
std::vector<double> MinMaxNormalize(std::vector<double> v);

// Pairwise Euclidean distances in (i, j) lexicographic order, normalized.
std::vector<double> DistanceVector(const NumericDataset& d);

using MetaFeatures19 = std::array<double, 19>;

MetaFeatures19 ComputeMetaFeatures19(std::span<const double> v,
                                     bool excess_kurtosis = false);

// Spearman correlation (average ranks on ties); 0 when either side is constant.
double Spearman(std::span<const double> a, std::span<const double> b);

// Distances followed by the row-pair Spearman correlations, normalized
// jointly.
std::vector<double> CadVector(const NumericDataset& d);

Eigen::RowVectorXd DistanceMetaFeatures(const NumericDataset& d,
                                        bool excess_kurtosis = false);
Eigen::RowVectorXd CadMetaFeatures(const NumericDataset& d,
                                   bool excess_kurtosis = false);

}  // namespace clustrec
