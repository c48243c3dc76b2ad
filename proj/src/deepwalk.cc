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

#include "clustrec/deepwalk.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "clustrec/error.hpp"

namespace clustrec {

void DeepWalkParams::Validate() const {
  if (num_walks < 1 || walk_length < 1 || dim < 1 || window < 1 ||
      negatives < 0 || epochs < 1 || !(lr > 0.0)) {
    throw Error(ErrorCode::kInvalidParams, "invalid DeepWalk parameters: " + ToString());
  }
}

std::string DeepWalkParams::ToString() const {
  std::ostringstream out;
  out << "walks=" << num_walks << ";length=" << walk_length << ";dim=" << dim
      << ";window=" << window << ";negatives=" << negatives
      << ";epochs=" << epochs << ";lr=" << FormatDouble(lr);
  return out.str();
}

WalkSampler::WalkSampler(const SimilarityGraph& g)
    : graph_(&g), cumulative_(g.node_count()) {
  for (int v = 0; v < g.node_count(); ++v) {
    double total = 0.0;
    for (const auto& [u, w] : g.adjacency(v)) {
      total += w;
      cumulative_[v].push_back(total);
    }
  }
}

int WalkSampler::Step(int node, Rng& rng) const {
  const auto& cdf = cumulative_[node];
  if (cdf.empty()) return -1;
  const double x = rng.Uniform() * cdf.back();
  auto it = std::upper_bound(cdf.begin(), cdf.end(), x);
  if (it == cdf.end()) --it;
  return graph_->adjacency(node)[it - cdf.begin()].first;
}

Walk WalkSampler::Sample(int start, int length, Rng& rng) const {
  Walk walk{start};
  while (static_cast<int>(walk.size()) < length) {
    const int next = Step(walk.back(), rng);
    if (next < 0) break;
    walk.push_back(next);
  }
  return walk;
}

WalkCorpus GenerateWalks(const SimilarityGraph& g, int num_walks,
                         int walk_length, std::uint64_t seed) {
  if (g.node_count() < 1) {
    throw Error(ErrorCode::kInvalidParams, "cannot walk an empty graph");
  }
  const WalkSampler sampler(g);
  WalkCorpus corpus;
  corpus.reserve(static_cast<std::size_t>(g.node_count()) * num_walks);
  for (int v = 0; v < g.node_count(); ++v) {
    for (int r = 0; r < num_walks; ++r) {
      Rng rng(MixSeed(seed, static_cast<std::uint64_t>(v),
                      static_cast<std::uint64_t>(r)));
      corpus.push_back(sampler.Sample(v, walk_length, rng));
    }
  }
  return corpus;
}

std::vector<std::pair<int, int>> ContextPairs(const Walk& walk, int window) {
  std::vector<std::pair<int, int>> pairs;
  const int len = static_cast<int>(walk.size());
  for (int i = 0; i < len; ++i) {
    for (int j = std::max(0, i - window); j <= std::min(len - 1, i + window); ++j) {
      if (j != i) pairs.emplace_back(walk[i], walk[j]);
    }
  }
  return pairs;
}

namespace {

double Sigmoid(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

}  // namespace

Eigen::MatrixXd TrainSkipgram(const WalkCorpus& corpus, int node_count,
                              const DeepWalkParams& params, std::uint64_t seed) {
  params.Validate();
  if (corpus.empty()) {
    throw Error(ErrorCode::kInvalidParams, "empty walk corpus");
  }
  const int dim = params.dim;
  Rng rng(seed);
  // Row-major so a node's vector is contiguous.
  using Table = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  Table in(node_count, dim);
  for (int v = 0; v < node_count; ++v) {
    for (int k = 0; k < dim; ++k) in(v, k) = rng.Uniform(-0.5 / dim, 0.5 / dim);
  }
  Table out = Table::Zero(node_count, dim);

  std::vector<double> noise(node_count, 0.0);
  std::size_t tokens = 0;
  for (const Walk& w : corpus) {
    for (int v : w) noise[v] += 1.0;
    tokens += w.size();
  }
  for (double& c : noise) c = std::pow(c, 0.75);
  std::vector<double> noise_cdf(node_count);
  double acc = 0.0;
  for (int v = 0; v < node_count; ++v) noise_cdf[v] = (acc += noise[v]);

  const double total_steps = static_cast<double>(tokens) * params.epochs;
  double step = 0.0;
  Eigen::RowVectorXd grad_in(dim);
  for (int epoch = 0; epoch < params.epochs; ++epoch) {
    for (const Walk& w : corpus) {
      const int len = static_cast<int>(w.size());
      for (int i = 0; i < len; ++i, step += 1.0) {
        const double lr =
            params.lr * std::max(1e-4, 1.0 - step / total_steps);
        const int center = w[i];
        for (int j = std::max(0, i - params.window);
             j <= std::min(len - 1, i + params.window); ++j) {
          if (j == i) continue;
          const int context = w[j];
          grad_in.setZero();
          for (int s = 0; s <= params.negatives; ++s) {
            int target = context;
            double label = 1.0;
            if (s > 0) {
              const double x = rng.Uniform() * noise_cdf.back();
              target = static_cast<int>(
                  std::upper_bound(noise_cdf.begin(), noise_cdf.end(), x) -
                  noise_cdf.begin());
              target = std::min(target, node_count - 1);
              if (target == context) continue;
              label = 0.0;
            }
            const double g =
                lr * (label - Sigmoid(in.row(center).dot(out.row(target))));
            grad_in += g * out.row(target);
            out.row(target) += g * in.row(center);
          }
          in.row(center) += grad_in;
        }
      }
    }
  }
  return in;
}

Eigen::MatrixXd NodeFeatures(const SimilarityGraph& g,
                             const DeepWalkParams& params, std::uint64_t seed) {
  params.Validate();
  const WalkCorpus corpus =
      GenerateWalks(g, params.num_walks, params.walk_length, MixSeed(seed, 1));
  return TrainSkipgram(corpus, g.node_count(), params, MixSeed(seed, 2));
}

}  // namespace clustrec
