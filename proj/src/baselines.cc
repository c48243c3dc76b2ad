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

#include "clustrec/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "clustrec/error.hpp"
#include "clustrec/stats.hpp"

namespace clustrec {
namespace {

// Percentages of `counts` over `total`. The last nonzero bin absorbs the
// rounding so that summing the bins in order gives exactly 100.
template <std::size_t N>
std::array<double, N> Percentages(const std::array<std::size_t, N>& counts,
                                  std::size_t total) {
  std::array<double, N> pct{};
  std::size_t last = 0;
  for (std::size_t k = 0; k < N; ++k) {
    pct[k] = 100.0 * static_cast<double>(counts[k]) / static_cast<double>(total);
    if (counts[k] > 0) last = k;
  }
  double before = 0.0;
  for (std::size_t k = 0; k < last; ++k) before += pct[k];
  double v = 100.0 - before;
  while (before + v > 100.0) v = std::nextafter(v, 0.0);
  while (before + v < 100.0) v = std::nextafter(v, 200.0);
  pct[last] = v;
  return pct;
}

}  // namespace

PopularityVector PopularityRank(const PerformanceTable& table) {
  std::vector<std::size_t> rows(table.num_datasets());
  std::iota(rows.begin(), rows.end(), 0);
  return PopularityRank(table, rows);
}

PopularityVector PopularityRank(const PerformanceTable& table,
                                std::span<const std::size_t> rows) {
  std::vector<int> counts(table.num_algorithms(), 0);
  for (std::size_t d : rows) ++counts[table.best[d]];
  std::vector<std::size_t> order(counts.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return counts[a] > counts[b]; });
  PopularityVector p;
  p.measure = table.measure;
  for (std::size_t a : order) {
    p.order.push_back(table.algorithms[a]);
    p.counts.push_back(counts[a]);
  }
  return p;
}

std::vector<double> MinMaxNormalize(std::vector<double> v) {
  if (v.empty()) return v;
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  const double a = *lo, span = *hi - *lo;
  for (double& x : v) x = span > 0.0 ? (x - a) / span : 0.0;
  return v;
}

std::vector<double> DistanceVector(const NumericDataset& d) {
  if (d.n() < 2) {
    throw Error(ErrorCode::kInvalidParams, "distance vector needs n >= 2");
  }
  std::vector<double> v;
  v.reserve(static_cast<std::size_t>(d.n() * (d.n() - 1) / 2));
  for (Eigen::Index i = 0; i < d.n(); ++i) {
    for (Eigen::Index j = i + 1; j < d.n(); ++j) {
      v.push_back((d.matrix.row(i) - d.matrix.row(j)).norm());
    }
  }
  return MinMaxNormalize(std::move(v));
}

MetaFeatures19 ComputeMetaFeatures19(std::span<const double> v,
                                     bool excess_kurtosis) {
  if (v.empty()) {
    throw Error(ErrorCode::kInvalidParams, "meta-features of an empty vector");
  }
  const auto n = static_cast<double>(v.size());
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= n;
  double m2 = 0.0, m3 = 0.0, m4 = 0.0;
  for (double x : v) {
    const double c = x - mean;
    m2 += c * c;
    m3 += c * c * c;
    m4 += c * c * c * c;
  }
  const double var = v.size() > 1 ? m2 / (n - 1.0) : 0.0;
  const double sd = std::sqrt(var);
  MetaFeatures19 mf{};
  mf[0] = mean;
  mf[1] = var;
  mf[2] = sd;
  if (sd > 0.0) {
    mf[3] = (m3 / n) / (sd * sd * sd);
    mf[4] = (m4 / n) / (var * var) - (excess_kurtosis ? 3.0 : 0.0);
  }

  std::array<std::size_t, 10> bins{};
  for (double x : v) {
    std::size_t k = 0;
    while (k < 9 && x > static_cast<double>(k + 1) / 10.0) ++k;
    ++bins[k];
  }
  const auto interval = Percentages(bins, v.size());
  std::copy(interval.begin(), interval.end(), mf.begin() + 5);

  std::array<std::size_t, 4> bands{};
  for (double x : v) {
    const double z = sd > 0.0 ? std::abs(x - mean) / sd : 0.0;
    ++bands[z < 1.0 ? 0 : z < 2.0 ? 1 : z < 3.0 ? 2 : 3];
  }
  const auto zs = Percentages(bands, v.size());
  std::copy(zs.begin(), zs.end(), mf.begin() + 15);
  return mf;
}

double Spearman(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::kLengthMismatch, "Spearman of unequal lengths");
  }
  const std::vector<double> ra = FractionalRanks(a);
  const std::vector<double> rb = FractionalRanks(b);
  const auto n = static_cast<double>(a.size());
  const double mean = (n + 1.0) / 2.0;
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double x = ra[i] - mean, y = rb[i] - mean;
    sab += x * y;
    saa += x * x;
    sbb += y * y;
  }
  if (saa <= 0.0 || sbb <= 0.0) return 0.0;
  return sab / std::sqrt(saa * sbb);
}

std::vector<double> CadVector(const NumericDataset& d) {
  if (d.n() < 2 || d.m() < 2) {
    throw Error(ErrorCode::kInvalidParams, "CaD needs n >= 2 and m >= 2");
  }
  std::vector<double> dist, corr;
  std::vector<std::vector<double>> rows(d.n());
  for (Eigen::Index i = 0; i < d.n(); ++i) {
    for (Eigen::Index k = 0; k < d.m(); ++k) rows[i].push_back(d.matrix(i, k));
  }
  for (Eigen::Index i = 0; i < d.n(); ++i) {
    for (Eigen::Index j = i + 1; j < d.n(); ++j) {
      dist.push_back((d.matrix.row(i) - d.matrix.row(j)).norm());
      corr.push_back(Spearman(rows[i], rows[j]));
    }
  }
  dist.insert(dist.end(), corr.begin(), corr.end());
  return MinMaxNormalize(std::move(dist));
}

namespace {
Eigen::RowVectorXd ToRow(const MetaFeatures19& mf) {
  Eigen::RowVectorXd r(19);
  for (int k = 0; k < 19; ++k) r(k) = mf[k];
  return r;
}
}  // namespace

Eigen::RowVectorXd DistanceMetaFeatures(const NumericDataset& d,
                                        bool excess_kurtosis) {
  return ToRow(ComputeMetaFeatures19(DistanceVector(d), excess_kurtosis));
}

Eigen::RowVectorXd CadMetaFeatures(const NumericDataset& d,
                                   bool excess_kurtosis) {
  return ToRow(ComputeMetaFeatures19(CadVector(d), excess_kurtosis));
}

}  // namespace clustrec
