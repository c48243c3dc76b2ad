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

// Gaussian mixtures fitted by EM with full ('F'), tied ('T') or diagonal
// ('D') covariances.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <Eigen/Cholesky>

#include "clustrec/algorithms.hpp"
#include "clustrec/error.hpp"

namespace clustrec::detail {
namespace {

class GaussianMixture : public Clusterer {
 public:
  explicit GaussianMixture(char covariance) : covariance_(covariance) {}

  void Prepare(const NumericDataset& d) override { x_ = d.matrix; }

  ClusteringSolution Run(const ParamPoint& p,
                         std::uint64_t seed) const override {
    CheckK(p, x_.rows(), "GM");
    const Eigen::Index n = x_.rows(), m = x_.cols();
    const int k = p.k;
    Rng rng(seed);
    const RowMatrix seeds = KMeansPlusPlus(x_, k, rng);

    // Initial responsibilities: hard assignment to the nearest seed.
    Eigen::MatrixXd resp = Eigen::MatrixXd::Zero(n, k);
    for (Eigen::Index i = 0; i < n; ++i) {
      Eigen::Index arg = 0;
      (seeds.rowwise() - x_.row(i)).rowwise().squaredNorm().minCoeff(&arg);
      resp(i, arg) = 1.0;
    }

    std::vector<Eigen::RowVectorXd> means(k);
    std::vector<Eigen::MatrixXd> covs(k);
    Eigen::VectorXd weights(k);
    double previous = -std::numeric_limits<double>::infinity();
    bool converged = false;
    int it = 0;
    Eigen::MatrixXd logp(n, k);
    for (; it < kMaxIterations; ++it) {
      MStep(resp, means, covs, weights);
      const double ll = EStep(means, covs, weights, logp, resp);
      if (it > 0 && std::abs(ll - previous) <= kTolerance) {
        converged = true;
        break;
      }
      previous = ll;
    }

    ClusteringSolution s;
    s.labels.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      Eigen::Index arg = 0;
      resp.row(i).maxCoeff(&arg);
      s.labels[i] = static_cast<int>(arg);
    }
    s.seed = seed;
    s.converged = converged;
    s.iterations = it;
    (void)m;
    Canonicalize(s);
    return s;
  }

 private:
  void MStep(const Eigen::MatrixXd& resp,
             std::vector<Eigen::RowVectorXd>& means,
             std::vector<Eigen::MatrixXd>& covs,
             Eigen::VectorXd& weights) const {
    const Eigen::Index n = x_.rows(), m = x_.cols();
    const int k = static_cast<int>(resp.cols());
    Eigen::MatrixXd tied = Eigen::MatrixXd::Zero(m, m);
    for (int c = 0; c < k; ++c) {
      const double nk = resp.col(c).sum() + 10 * std::numeric_limits<double>::epsilon();
      weights(c) = nk / static_cast<double>(n);
      means[c] = (resp.col(c).transpose() * x_) / nk;
      const RowMatrix centred = x_.rowwise() - means[c];
      Eigen::MatrixXd cov =
          centred.transpose() * resp.col(c).asDiagonal() * centred;
      if (covariance_ == 'T') {
        tied += cov;
        continue;
      }
      cov /= nk;
      if (covariance_ == 'D') cov = Eigen::MatrixXd(cov.diagonal().asDiagonal());
      cov.diagonal().array() += kCovarianceRegularization;
      covs[c] = std::move(cov);
    }
    if (covariance_ == 'T') {
      tied /= static_cast<double>(n);
      tied.diagonal().array() += kCovarianceRegularization;
      for (int c = 0; c < k; ++c) covs[c] = tied;
    }
  }

  // Fills responsibilities and returns the mean log-likelihood.
  double EStep(const std::vector<Eigen::RowVectorXd>& means,
               const std::vector<Eigen::MatrixXd>& covs,
               const Eigen::VectorXd& weights, Eigen::MatrixXd& logp,
               Eigen::MatrixXd& resp) const {
    const Eigen::Index n = x_.rows(), m = x_.cols();
    const int k = static_cast<int>(weights.size());
    const double log2pi = std::log(2.0 * std::numbers::pi);
    for (int c = 0; c < k; ++c) {
      Eigen::LLT<Eigen::MatrixXd> llt(covs[c]);
      if (llt.info() != Eigen::Success) {
        throw Error(ErrorCode::kInternal, "covariance is not positive definite");
      }
      const Eigen::MatrixXd l = llt.matrixL();
      const double logdet = 2.0 * l.diagonal().array().log().sum();
      const Eigen::MatrixXd centred =
          (x_.rowwise() - means[c]).transpose();  // m x n
      const Eigen::MatrixXd z = llt.matrixL().solve(centred);
      const Eigen::VectorXd maha = z.colwise().squaredNorm().transpose();
      logp.col(c) = (-0.5 * (maha.array() + logdet + m * log2pi) +
                     std::log(weights(c)))
                        .matrix();
    }
    double total = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      const double top = logp.row(i).maxCoeff();
      const double lse =
          top + std::log((logp.row(i).array() - top).exp().sum());
      resp.row(i) = (logp.row(i).array() - lse).exp().matrix();
      total += lse;
    }
    return total / static_cast<double>(n);
  }

  char covariance_;
  RowMatrix x_;
};

}  // namespace

std::unique_ptr<Clusterer> MakeGaussianMixture(char covariance) {
  return std::make_unique<GaussianMixture>(covariance);
}

}  // namespace clustrec::detail
