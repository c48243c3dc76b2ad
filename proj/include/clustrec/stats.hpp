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

#include <span>
#include <vector>

#include <Eigen/Dense>

namespace clustrec {

// Ascending ranks from 1, ties sharing the mean of their positions.
std::vector<double> FractionalRanks(std::span<const double> values);

struct WilcoxonResult {
  double w_plus = 0.0;   // rank sum of positive differences y - x
  double w_minus = 0.0;
  double statistic = 0.0;  // min(w_plus, w_minus)
  double p_value = 1.0;    // two-sided
  int n = 0;               // pairs left after dropping zero differences
  bool exact = false;
};

inline constexpr int kWilcoxonExactLimit = 25;
inline constexpr int kWilcoxonMinPairs = 6;

// Signed-rank test on y - x. Exact null distribution (ties included) up to
// kWilcoxonExactLimit pairs, tie-corrected normal approximation above.
WilcoxonResult WilcoxonSignedRank(std::span<const double> x,
                                  std::span<const double> y);

struct FriedmanResult {
  double statistic = 0.0;
  double p_value = 1.0;
  int methods = 0;
  int datasets = 0;
};

// Chi-square form with tie correction; `scores` is methods x datasets and
// methods are ranked within each dataset.
FriedmanResult FriedmanTest(const Eigen::MatrixXd& scores);

}  // namespace clustrec
