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

#include "clustrec/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <boost/math/distributions/chi_squared.hpp>

#include "clustrec/error.hpp"

namespace clustrec {
namespace {

// Sum of t^3 - t over groups of tied values.
double TieTerm(std::span<const double> values) {
  std::vector<double> v(values.begin(), values.end());
  std::sort(v.begin(), v.end());
  double term = 0.0;
  for (std::size_t i = 0; i < v.size();) {
    std::size_t j = i + 1;
    while (j < v.size() && v[j] == v[i]) ++j;
    const auto t = static_cast<double>(j - i);
    term += t * t * t - t;
    i = j;
  }
  return term;
}

}  // namespace

std::vector<double> FractionalRanks(std::span<const double> values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(values.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i + 1;
    while (j < order.size() && values[order[j]] == values[order[i]]) ++j;
    const double r = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
    for (std::size_t t = i; t < j; ++t) ranks[order[t]] = r;
    i = j;
  }
  return ranks;
}

WilcoxonResult WilcoxonSignedRank(std::span<const double> x,
                                  std::span<const double> y) {
  if (x.size() != y.size()) {
    throw Error(ErrorCode::kLengthMismatch, "Wilcoxon samples differ in length");
  }
  std::vector<double> diff, magnitude;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = y[i] - x[i];
    if (d != 0.0) {
      diff.push_back(d);
      magnitude.push_back(std::abs(d));
    }
  }
  WilcoxonResult r;
  r.n = static_cast<int>(diff.size());
  if (r.n < kWilcoxonMinPairs) {
    throw Error(ErrorCode::kTooFewPairs,
                std::to_string(r.n) + " nonzero differences, need " +
                    std::to_string(kWilcoxonMinPairs));
  }
  const std::vector<double> ranks = FractionalRanks(magnitude);
  for (std::size_t i = 0; i < diff.size(); ++i) {
    (diff[i] > 0.0 ? r.w_plus : r.w_minus) += ranks[i];
  }
  r.statistic = std::min(r.w_plus, r.w_minus);
  const auto n = static_cast<double>(r.n);

  if (r.n <= kWilcoxonExactLimit) {
    // Doubled ranks are integers even with ties; count sign assignments by
    // the rank sum they give to the positive side.
    std::vector<int> doubled;
    int total = 0;
    for (double rk : ranks) {
      doubled.push_back(static_cast<int>(std::lround(2.0 * rk)));
      total += doubled.back();
    }
    std::vector<double> ways(total + 1, 0.0);
    ways[0] = 1.0;
    for (int d : doubled) {
      for (int s = total; s >= d; --s) ways[s] += ways[s - d];
    }
    const int observed = static_cast<int>(std::lround(2.0 * r.w_plus));
    double low = 0.0, high = 0.0, all = 0.0;
    for (int s = 0; s <= total; ++s) {
      all += ways[s];
      if (s <= observed) low += ways[s];
      if (s >= observed) high += ways[s];
    }
    r.p_value = std::min(1.0, 2.0 * std::min(low, high) / all);
    r.exact = true;
    return r;
  }
  const double mean = n * (n + 1.0) / 4.0;
  const double var = n * (n + 1.0) * (2.0 * n + 1.0) / 24.0 - TieTerm(magnitude) / 48.0;
  if (!(var > 0.0)) {
    r.p_value = 1.0;
    return r;
  }
  const double z = (r.w_plus - mean) / std::sqrt(var);
  r.p_value = std::min(1.0, std::erfc(std::abs(z) / std::sqrt(2.0)));
  return r;
}

FriedmanResult FriedmanTest(const Eigen::MatrixXd& scores) {
  FriedmanResult r;
  r.methods = static_cast<int>(scores.rows());
  r.datasets = static_cast<int>(scores.cols());
  if (r.methods < 3 || r.datasets < 10) {
    throw Error(ErrorCode::kTooFewSamples,
                "Friedman needs >= 3 methods and >= 10 datasets, got " +
                    std::to_string(r.methods) + " x " + std::to_string(r.datasets));
  }
  const auto k = static_cast<double>(r.methods);
  const auto nd = static_cast<double>(r.datasets);
  std::vector<double> rank_sum(r.methods, 0.0);
  double ties = 0.0;
  for (int d = 0; d < r.datasets; ++d) {
    std::vector<double> column(scores.col(d).data(),
                               scores.col(d).data() + r.methods);
    const auto ranks = FractionalRanks(column);
    for (int a = 0; a < r.methods; ++a) rank_sum[a] += ranks[a];
    ties += TieTerm(column);
  }
  double sum_sq = 0.0;
  for (double s : rank_sum) sum_sq += s * s;
  const double chi = 12.0 / (nd * k * (k + 1.0)) * sum_sq - 3.0 * nd * (k + 1.0);
  const double correction = 1.0 - ties / (nd * (k * k * k - k));
  if (correction <= 0.0) {
    return r;  // every dataset fully tied
  }
  r.statistic = std::max(0.0, chi / correction);
  const boost::math::chi_squared dist(k - 1.0);
  r.p_value = boost::math::cdf(boost::math::complement(dist, r.statistic));
  return r;
}

}  // namespace clustrec
