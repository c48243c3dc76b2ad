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
#include <cmath>
#include <limits>

#include "clustrec/algorithms.hpp"
#include "clustrec/error.hpp"

namespace clustrec::detail {
namespace {

std::vector<int> NearestCenter(const RowMatrix& x, const RowMatrix& centers,
                               double* objective = nullptr) {
  std::vector<int> labels(x.rows());
  double total = 0.0;
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    double best = std::numeric_limits<double>::infinity();
    int arg = 0;
    for (Eigen::Index c = 0; c < centers.rows(); ++c) {
      const double d = (x.row(i) - centers.row(c)).squaredNorm();
      if (d < best) {
        best = d;
        arg = static_cast<int>(c);
      }
    }
    labels[i] = arg;
    total += best;
  }
  if (objective) *objective = total;
  return labels;
}

bool Converged(double previous, double current) {
  return std::abs(previous - current) <=
         kTolerance * std::max(1.0, std::abs(previous));
}

ClusteringSolution Finish(std::vector<int> labels, std::uint64_t seed,
                          bool converged, int iterations) {
  ClusteringSolution s;
  s.labels = std::move(labels);
  s.seed = seed;
  s.converged = converged;
  s.iterations = iterations;
  Canonicalize(s);
  return s;
}

class PointsClusterer : public Clusterer {
 public:
  void Prepare(const NumericDataset& d) override { x_ = d.matrix; }

 protected:
  RowMatrix x_;
};

// Lloyd iterations from k-means++ seeding. An emptied cluster is re-seeded at
// the point farthest from its current center.
class KMeans : public PointsClusterer {
 public:
  ClusteringSolution Run(const ParamPoint& p,
                         std::uint64_t seed) const override {
    CheckK(p, x_.rows(), "KM");
    Rng rng(seed);
    RowMatrix centers = KMeansPlusPlus(x_, p.k, rng);
    double previous = std::numeric_limits<double>::infinity();
    std::vector<int> labels;
    int it = 0;
    bool converged = false;
    for (; it < kMaxIterations; ++it) {
      double objective = 0.0;
      labels = NearestCenter(x_, centers, &objective);
      if (it > 0 && Converged(previous, objective)) {
        converged = true;
        break;
      }
      previous = objective;
      RowMatrix sums = RowMatrix::Zero(p.k, x_.cols());
      std::vector<int> counts(p.k, 0);
      for (Eigen::Index i = 0; i < x_.rows(); ++i) {
        sums.row(labels[i]) += x_.row(i);
        ++counts[labels[i]];
      }
      for (int c = 0; c < p.k; ++c) {
        if (counts[c] > 0) {
          centers.row(c) = sums.row(c) / counts[c];
          continue;
        }
        Eigen::Index far = 0;
        double far_d = -1.0;
        for (Eigen::Index i = 0; i < x_.rows(); ++i) {
          const double d = (x_.row(i) - centers.row(labels[i])).squaredNorm();
          if (d > far_d) {
            far_d = d;
            far = i;
          }
        }
        centers.row(c) = x_.row(far);
      }
    }
    return Finish(std::move(labels), seed, converged, it);
  }
};

// K-harmonic means with exponent p. Distances are rescaled per point by the
// nearest-center distance so the d^-(p+2) weights stay finite.
class KHarmonicMeans : public PointsClusterer {
 public:
  ClusteringSolution Run(const ParamPoint& p,
                         std::uint64_t seed) const override {
    CheckK(p, x_.rows(), "KHM");
    const double e = kHarmonicExponent;
    const Eigen::Index n = x_.rows();
    Rng rng(seed);
    RowMatrix centers = KMeansPlusPlus(x_, p.k, rng);
    double previous = std::numeric_limits<double>::infinity();
    bool converged = false;
    int it = 0;
    std::vector<double> dist(p.k);
    for (; it < kMaxIterations; ++it) {
      RowMatrix num = RowMatrix::Zero(p.k, x_.cols());
      std::vector<double> den(p.k, 0.0);
      double objective = 0.0;
      for (Eigen::Index i = 0; i < n; ++i) {
        double dmin = std::numeric_limits<double>::infinity();
        for (int c = 0; c < p.k; ++c) {
          dist[c] = std::max((x_.row(i) - centers.row(c)).norm(), 1e-12);
          dmin = std::min(dmin, dist[c]);
        }
        double sum_p = 0.0, sum_p2 = 0.0;
        for (int c = 0; c < p.k; ++c) {
          const double r = dmin / dist[c];
          sum_p += std::pow(r, e);
          sum_p2 += std::pow(r, e + 2.0);
        }
        objective += p.k * std::pow(dmin, e) / sum_p;
        const double weight = std::pow(dmin, e - 2.0) * sum_p2 / (sum_p * sum_p);
        for (int c = 0; c < p.k; ++c) {
          const double membership = std::pow(dmin / dist[c], e + 2.0) / sum_p2;
          const double mw = membership * weight;
          num.row(c) += mw * x_.row(i);
          den[c] += mw;
        }
      }
      if (it > 0 && Converged(previous, objective)) {
        converged = true;
        break;
      }
      previous = objective;
      for (int c = 0; c < p.k; ++c) {
        if (den[c] > 0.0) centers.row(c) = num.row(c) / den[c];
      }
    }
    return Finish(NearestCenter(x_, centers), seed, converged, it);
  }
};

// Kernel k-means with an RBF kernel whose bandwidth is the median pairwise
// distance.
class KernelKMeans : public Clusterer {
 public:
  void Prepare(const NumericDataset& d) override {
    x_ = d.matrix;
    const Eigen::MatrixXd dist = PairwiseDistances(d.matrix);
    double sigma = DistanceQuantile(dist, 0.5);
    if (!(sigma > 0.0)) sigma = 1.0;
    kernel_ = (-dist.array().square() / (2.0 * sigma * sigma)).exp().matrix();
  }

  ClusteringSolution Run(const ParamPoint& p,
                         std::uint64_t seed) const override {
    CheckK(p, x_.rows(), "KKM");
    const Eigen::Index n = x_.rows();
    Rng rng(seed);
    std::vector<int> labels = NearestCenter(x_, KMeansPlusPlus(x_, p.k, rng));
    bool converged = false;
    int it = 0;
    std::vector<double> self(p.k), dist(n);
    std::vector<int> counts(p.k);
    Eigen::MatrixXd point_to_cluster(n, p.k);
    for (; it < kMaxIterations; ++it) {
      std::fill(counts.begin(), counts.end(), 0);
      for (int l : labels) ++counts[l];
      point_to_cluster.setZero();
      for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
          point_to_cluster(i, labels[j]) += kernel_(i, j);
        }
      }
      for (int c = 0; c < p.k; ++c) {
        double s = 0.0;
        for (Eigen::Index j = 0; j < n; ++j) {
          if (labels[j] == c) s += point_to_cluster(j, c);
        }
        self[c] = counts[c] > 0 ? s / (double(counts[c]) * counts[c]) : 0.0;
      }
      std::vector<int> next(n);
      for (Eigen::Index i = 0; i < n; ++i) {
        double best = std::numeric_limits<double>::infinity();
        for (int c = 0; c < p.k; ++c) {
          if (counts[c] == 0) continue;
          const double d = kernel_(i, i) -
                           2.0 * point_to_cluster(i, c) / counts[c] + self[c];
          if (d < best) {
            best = d;
            next[i] = c;
          }
        }
        dist[i] = best;
      }
      // Re-seed empty clusters with the worst-fitting points.
      for (int c = 0; c < p.k; ++c) {
        if (std::find(next.begin(), next.end(), c) != next.end()) continue;
        Eigen::Index worst = 0;
        for (Eigen::Index i = 1; i < n; ++i) {
          if (dist[i] > dist[worst]) worst = i;
        }
        next[worst] = c;
        dist[worst] = -1.0;
      }
      if (next == labels) {
        converged = true;
        break;
      }
      labels = std::move(next);
    }
    return Finish(std::move(labels), seed, converged, it);
  }

 private:
  RowMatrix x_;
  Eigen::MatrixXd kernel_;
};

// Mini-batch k-means with per-center learning rates 1/count.
class MiniBatchKMeans : public PointsClusterer {
 public:
  static constexpr int kBatchSize = 32;
  static constexpr int kSteps = 100;

  ClusteringSolution Run(const ParamPoint& p,
                         std::uint64_t seed) const override {
    CheckK(p, x_.rows(), "MBK");
    const Eigen::Index n = x_.rows();
    Rng rng(seed);
    RowMatrix centers = KMeansPlusPlus(x_, p.k, rng);
    std::vector<double> counts(p.k, 0.0);
    const Eigen::Index batch = std::min<Eigen::Index>(n, kBatchSize);
    std::vector<Eigen::Index> sample(batch);
    std::vector<int> assign(batch);
    int step = 0;
    for (; step < kSteps; ++step) {
      for (auto& s : sample) s = static_cast<Eigen::Index>(rng.UniformInt(n));
      for (Eigen::Index b = 0; b < batch; ++b) {
        double best = std::numeric_limits<double>::infinity();
        for (int c = 0; c < p.k; ++c) {
          const double d = (x_.row(sample[b]) - centers.row(c)).squaredNorm();
          if (d < best) {
            best = d;
            assign[b] = c;
          }
        }
      }
      double shift = 0.0;
      for (Eigen::Index b = 0; b < batch; ++b) {
        const int c = assign[b];
        counts[c] += 1.0;
        const double eta = 1.0 / counts[c];
        const auto before = centers.row(c).eval();
        centers.row(c) = (1.0 - eta) * centers.row(c) + eta * x_.row(sample[b]);
        shift += (centers.row(c) - before).squaredNorm();
      }
      if (shift <= kTolerance * kTolerance) break;
    }
    // The step budget is the stopping rule, so running it out is not a
    // convergence failure.
    return Finish(NearestCenter(x_, centers), seed, true, step);
  }
};

// Fuzzy c-means with fuzzifier 2; hard labels by maximum membership.
class FuzzyCMeans : public PointsClusterer {
 public:
  ClusteringSolution Run(const ParamPoint& p,
                         std::uint64_t seed) const override {
    CheckK(p, x_.rows(), "FC");
    const Eigen::Index n = x_.rows();
    Rng rng(seed);
    RowMatrix centers = KMeansPlusPlus(x_, p.k, rng);
    Eigen::MatrixXd u(n, p.k);
    double previous = std::numeric_limits<double>::infinity();
    bool converged = false;
    int it = 0;
    std::vector<double> d2(p.k);
    for (; it < kMaxIterations; ++it) {
      double objective = 0.0;
      for (Eigen::Index i = 0; i < n; ++i) {
        int zero = -1;
        for (int c = 0; c < p.k; ++c) {
          d2[c] = (x_.row(i) - centers.row(c)).squaredNorm();
          if (d2[c] == 0.0 && zero < 0) zero = c;
        }
        if (zero >= 0) {
          u.row(i).setZero();
          u(i, zero) = 1.0;
          continue;
        }
        double inv_sum = 0.0;
        for (int c = 0; c < p.k; ++c) inv_sum += 1.0 / d2[c];
        for (int c = 0; c < p.k; ++c) {
          u(i, c) = (1.0 / d2[c]) / inv_sum;
          objective += u(i, c) * u(i, c) * d2[c];
        }
      }
      if (it > 0 && Converged(previous, objective)) {
        converged = true;
        break;
      }
      previous = objective;
      for (int c = 0; c < p.k; ++c) {
        Eigen::RowVectorXd num = Eigen::RowVectorXd::Zero(x_.cols());
        double den = 0.0;
        for (Eigen::Index i = 0; i < n; ++i) {
          const double w = u(i, c) * u(i, c);
          num += w * x_.row(i);
          den += w;
        }
        if (den > 0.0) centers.row(c) = num / den;
      }
    }
    std::vector<int> labels(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      Eigen::Index arg;
      u.row(i).maxCoeff(&arg);
      labels[i] = static_cast<int>(arg);
    }
    return Finish(std::move(labels), seed, converged, it);
  }
};

}  // namespace

std::unique_ptr<Clusterer> MakeKMeans() { return std::make_unique<KMeans>(); }
std::unique_ptr<Clusterer> MakeKHarmonicMeans() {
  return std::make_unique<KHarmonicMeans>();
}
std::unique_ptr<Clusterer> MakeKernelKMeans() {
  return std::make_unique<KernelKMeans>();
}
std::unique_ptr<Clusterer> MakeMiniBatchKMeans() {
  return std::make_unique<MiniBatchKMeans>();
}
std::unique_ptr<Clusterer> MakeFuzzyCMeans() {
  return std::make_unique<FuzzyCMeans>();
}

}  // namespace clustrec::detail
