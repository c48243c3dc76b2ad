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

// Agglomerative linkages (single, average, complete, Ward) and minimum
// spanning tree clustering with Zahn's inconsistent-edge criterion.

#include <algorithm>
#include <limits>
#include <numeric>

#include "clustrec/algorithms.hpp"
#include "clustrec/error.hpp"

namespace clustrec::detail {
namespace {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  std::size_t Find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void Unite(std::size_t a, std::size_t b) {
    a = Find(a);
    b = Find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::size_t> parent_;
};

struct Merge {
  int a;
  int b;
  double height;
};

// Components of the forest over n points spanned by `edges`, labelled in
// first-appearance order.
std::vector<int> ComponentLabels(std::size_t n,
                                 const std::vector<std::pair<int, int>>& edges) {
  UnionFind uf(n);
  for (auto [a, b] : edges) uf.Unite(a, b);
  std::vector<int> labels(n);
  for (std::size_t i = 0; i < n; ++i) labels[i] = static_cast<int>(uf.Find(i));
  return labels;
}

// Lance-Williams agglomeration over a full dissimilarity matrix. Pairs with
// equal dissimilarity merge in (lowest i, lowest j) order.
class Linkage : public Clusterer {
 public:
  explicit Linkage(char method) : method_(method) {}

  void Prepare(const NumericDataset& d) override {
    n_ = d.n();
    Eigen::MatrixXd dist = PairwiseDistances(d.matrix);
    if (method_ == 'W') dist = dist.array().square().matrix();
    merges_.clear();
    const Eigen::Index n = n_;
    std::vector<bool> active(n, true);
    std::vector<double> size(n, 1.0);
    for (Eigen::Index step = 0; step + 1 < n; ++step) {
      double best = std::numeric_limits<double>::infinity();
      Eigen::Index bi = -1, bj = -1;
      for (Eigen::Index i = 0; i < n; ++i) {
        if (!active[i]) continue;
        for (Eigen::Index j = i + 1; j < n; ++j) {
          if (active[j] && dist(i, j) < best) {
            best = dist(i, j);
            bi = i;
            bj = j;
          }
        }
      }
      merges_.push_back({static_cast<int>(bi), static_cast<int>(bj), best});
      const double si = size[bi], sj = size[bj];
      for (Eigen::Index k = 0; k < n; ++k) {
        if (!active[k] || k == bi || k == bj) continue;
        const double dik = dist(bi, k), djk = dist(bj, k);
        double v = 0.0;
        switch (method_) {
          case 'S': v = std::min(dik, djk); break;
          case 'C': v = std::max(dik, djk); break;
          case 'A': v = (si * dik + sj * djk) / (si + sj); break;
          case 'W': {
            const double sk = size[k];
            v = ((si + sk) * dik + (sj + sk) * djk - sk * best) /
                (si + sj + sk);
            break;
          }
        }
        dist(bi, k) = v;
        dist(k, bi) = v;
      }
      size[bi] += sj;
      active[bj] = false;
    }
  }

  ClusteringSolution Run(const ParamPoint& params,
                         std::uint64_t seed) const override {
    CheckK(params, n_, "linkage");
    std::vector<std::pair<int, int>> edges;
    for (Eigen::Index i = 0; i < n_ - params.k; ++i) {
      edges.emplace_back(merges_[i].a, merges_[i].b);
    }
    ClusteringSolution s;
    s.labels = ComponentLabels(static_cast<std::size_t>(n_), edges);
    s.seed = seed;
    Canonicalize(s);
    return s;
  }

 private:
  char method_;
  Eigen::Index n_ = 0;
  std::vector<Merge> merges_;
};

// Prim's MST; each edge is scored by its weight over the mean weight of the
// tree edges sharing an endpoint with it, and the K-1 most inconsistent edges
// are cut.
class MinimumSpanningTree : public Clusterer {
 public:
  void Prepare(const NumericDataset& d) override {
    n_ = d.n();
    const Eigen::MatrixXd dist = PairwiseDistances(d.matrix);
    const Eigen::Index n = n_;
    edges_.clear();
    std::vector<bool> in_tree(n, false);
    std::vector<double> key(n, std::numeric_limits<double>::infinity());
    std::vector<int> parent(n, -1);
    key[0] = 0.0;
    for (Eigen::Index it = 0; it < n; ++it) {
      Eigen::Index u = -1;
      for (Eigen::Index v = 0; v < n; ++v) {
        if (!in_tree[v] && (u < 0 || key[v] < key[u])) u = v;
      }
      in_tree[u] = true;
      if (parent[u] >= 0) edges_.push_back({parent[u], static_cast<int>(u), key[u]});
      for (Eigen::Index v = 0; v < n; ++v) {
        if (!in_tree[v] && dist(u, v) < key[v]) {
          key[v] = dist(u, v);
          parent[v] = static_cast<int>(u);
        }
      }
    }
    std::vector<std::vector<std::size_t>> incident(n);
    for (std::size_t e = 0; e < edges_.size(); ++e) {
      incident[edges_[e].a].push_back(e);
      incident[edges_[e].b].push_back(e);
    }
    std::vector<double> ratio(edges_.size());
    for (std::size_t e = 0; e < edges_.size(); ++e) {
      double sum = 0.0;
      int count = 0;
      for (int endpoint : {edges_[e].a, edges_[e].b}) {
        for (std::size_t f : incident[endpoint]) {
          if (f == e) continue;
          sum += edges_[f].height;
          ++count;
        }
      }
      const double mean = count > 0 ? sum / count : 0.0;
      ratio[e] = mean > 0.0 ? edges_[e].height / mean
                            : std::numeric_limits<double>::infinity();
    }
    order_.resize(edges_.size());
    std::iota(order_.begin(), order_.end(), 0);
    std::stable_sort(order_.begin(), order_.end(),
                     [&](std::size_t x, std::size_t y) {
                       if (ratio[x] != ratio[y]) return ratio[x] > ratio[y];
                       return edges_[x].height > edges_[y].height;
                     });
  }

  ClusteringSolution Run(const ParamPoint& params,
                         std::uint64_t seed) const override {
    CheckK(params, n_, "MST");
    std::vector<bool> cut(edges_.size(), false);
    for (int c = 0; c + 1 < params.k; ++c) cut[order_[c]] = true;
    std::vector<std::pair<int, int>> kept;
    for (std::size_t e = 0; e < edges_.size(); ++e) {
      if (!cut[e]) kept.emplace_back(edges_[e].a, edges_[e].b);
    }
    ClusteringSolution s;
    s.labels = ComponentLabels(static_cast<std::size_t>(n_), kept);
    s.seed = seed;
    Canonicalize(s);
    return s;
  }

 private:
  Eigen::Index n_ = 0;
  std::vector<Merge> edges_;  // a, b, weight
  std::vector<std::size_t> order_;
};

}  // namespace

std::unique_ptr<Clusterer> MakeLinkage(char method) {
  return std::make_unique<Linkage>(method);
}

std::unique_ptr<Clusterer> MakeMst() {
  return std::make_unique<MinimumSpanningTree>();
}

}  // namespace clustrec::detail
