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

#include <algorithm>
#include <deque>
#include <limits>
#include <numeric>

#include "clustrec/algorithms.hpp"
#include "clustrec/error.hpp"

namespace clustrec::detail {
namespace {

class Dbscan : public Clusterer {
 public:
  void Prepare(const NumericDataset& d) override {
    dist_ = PairwiseDistances(d.matrix);
  }

  ClusteringSolution Run(const ParamPoint& p,
                         std::uint64_t seed) const override {
    if (!(p.eps > 0.0) || p.min_pts < 1) {
      throw Error(ErrorCode::kInvalidParams,
                  "DBSCAN needs eps > 0 and min_pts >= 1");
    }
    const Eigen::Index n = dist_.rows();
    std::vector<std::vector<int>> neighbours(n);
    std::vector<bool> core(n, false);
    bool any_core = false;
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j < n; ++j) {
        if (dist_(i, j) <= p.eps) neighbours[i].push_back(static_cast<int>(j));
      }
      core[i] = static_cast<int>(neighbours[i].size()) >= p.min_pts;
      any_core = any_core || core[i];
    }
    if (!any_core) {
      throw Error(ErrorCode::kAllNoise, "DBSCAN found no core point");
    }
    ClusteringSolution s;
    s.labels.assign(n, -1);
    s.seed = seed;
    int cluster = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (!core[i] || s.labels[i] >= 0) continue;
      std::deque<int> frontier{static_cast<int>(i)};
      s.labels[i] = cluster;
      while (!frontier.empty()) {
        const int u = frontier.front();
        frontier.pop_front();
        if (!core[u]) continue;
        for (int v : neighbours[u]) {
          if (s.labels[v] < 0) {
            s.labels[v] = cluster;
            frontier.push_back(v);
          }
        }
      }
      ++cluster;
    }
    Canonicalize(s);
    return s;
  }

 private:
  Eigen::MatrixXd dist_;
};

// Flat-kernel mean shift seeded at every point. Converged modes closer than
// the bandwidth are merged, most populated first; points take their nearest
// surviving mode.
class MeanShift : public Clusterer {
 public:
  void Prepare(const NumericDataset& d) override { x_ = d.matrix; }

  ClusteringSolution Run(const ParamPoint& p,
                         std::uint64_t seed) const override {
    if (!(p.bandwidth > 0.0)) {
      throw Error(ErrorCode::kInvalidParams, "MS needs bandwidth > 0");
    }
    const Eigen::Index n = x_.rows();
    const double h = p.bandwidth;
    RowMatrix modes(n, x_.cols());
    std::vector<int> population(n, 0);
    bool converged = true;
    int max_it = 0;
    for (Eigen::Index s = 0; s < n; ++s) {
      Eigen::RowVectorXd mean = x_.row(s);
      int it = 0;
      int count = 0;
      for (; it < kMaxIterations; ++it) {
        Eigen::RowVectorXd sum = Eigen::RowVectorXd::Zero(x_.cols());
        count = 0;
        for (Eigen::Index i = 0; i < n; ++i) {
          if ((x_.row(i) - mean).norm() <= h) {
            sum += x_.row(i);
            ++count;
          }
        }
        const Eigen::RowVectorXd next = sum / count;
        const double shift = (next - mean).norm();
        mean = next;
        if (shift <= 1e-3 * h) break;
      }
      if (it == kMaxIterations) converged = false;
      max_it = std::max(max_it, it);
      modes.row(s) = mean;
      population[s] = count;
    }
    std::vector<Eigen::Index> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) {
      return population[a] > population[b];
    });
    std::vector<Eigen::Index> kept;
    for (Eigen::Index s : order) {
      bool near = false;
      for (Eigen::Index k : kept) {
        if ((modes.row(s) - modes.row(k)).norm() < h) {
          near = true;
          break;
        }
      }
      if (!near) kept.push_back(s);
    }
    ClusteringSolution out;
    out.labels.resize(n);
    out.seed = seed;
    out.converged = converged;
    out.iterations = max_it;
    for (Eigen::Index i = 0; i < n; ++i) {
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t k = 0; k < kept.size(); ++k) {
        const double dd = (x_.row(i) - modes.row(kept[k])).squaredNorm();
        if (dd < best) {
          best = dd;
          out.labels[i] = static_cast<int>(k);
        }
      }
    }
    Canonicalize(out);
    return out;
  }

 private:
  RowMatrix x_;
};

}  // namespace

std::unique_ptr<Clusterer> MakeDbscan() { return std::make_unique<Dbscan>(); }
std::unique_ptr<Clusterer> MakeMeanShift() {
  return std::make_unique<MeanShift>();
}

}  // namespace clustrec::detail
