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

#include "clustrec/graph.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "clustrec/error.hpp"
#include "clustrec/serialize.hpp"

namespace clustrec {

ReducedDataset PcaReduce(const NumericDataset& d, double variance_target,
                         bool enabled) {
  if (d.n() < 2) {
    throw Error(ErrorCode::kInvalidParams, "PCA needs at least two rows");
  }
  if (!(variance_target > 0.0 && variance_target <= 1.0)) {
    throw Error(ErrorCode::kInvalidParams, "variance target must be in (0, 1]");
  }
  const Eigen::Index n = d.n(), m = d.m();
  ReducedDataset r;
  if (!enabled) {
    r.matrix = d.matrix;
    r.mean_vector = Eigen::RowVectorXd::Zero(m);
    r.components = Eigen::MatrixXd::Identity(m, m);
    return r;
  }
  r.mean_vector = d.matrix.colwise().mean();
  const Eigen::MatrixXd xc = d.matrix.rowwise() - r.mean_vector;

  // Eigenpairs in descending order, as directions in feature space.
  Eigen::VectorXd values;
  Eigen::MatrixXd directions;
  if (m <= n) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(xc.transpose() * xc);
    values = es.eigenvalues().reverse();
    directions = es.eigenvectors().rowwise().reverse();
  } else {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(xc * xc.transpose());
    values = es.eigenvalues().reverse();
    const Eigen::MatrixXd u = es.eigenvectors().rowwise().reverse();
    directions = Eigen::MatrixXd::Zero(m, n);
    for (Eigen::Index k = 0; k < n; ++k) {
      if (values(k) > 0.0) {
        directions.col(k) = xc.transpose() * u.col(k) / std::sqrt(values(k));
      }
    }
  }
  values = values.cwiseMax(0.0);
  const double total = values.sum();
  const double floor = 1e-12 * (values.size() > 0 ? values(0) : 0.0);
  Eigen::Index rank = 0;
  while (rank < values.size() && values(rank) > floor) ++rank;
  rank = std::max<Eigen::Index>(rank, 1);

  Eigen::Index q = 0;
  double cumulative = 0.0;
  while (q < rank) {
    cumulative += total > 0.0 ? values(q) / total : 1.0;
    ++q;
    if (cumulative >= variance_target - 1e-12) break;
  }
  r.components = directions.leftCols(q);
  for (Eigen::Index k = 0; k < q; ++k) {
    Eigen::Index arg = 0;
    r.components.col(k).cwiseAbs().maxCoeff(&arg);
    if (r.components(arg, k) < 0.0) r.components.col(k) *= -1.0;
    r.explained_variance.push_back(total > 0.0 ? values(k) / total : 0.0);
  }
  r.matrix = xc * r.components;
  return r;
}

double CosineSimilarity(const Eigen::Ref<const Eigen::RowVectorXd>& u,
                        const Eigen::Ref<const Eigen::RowVectorXd>& v) {
  if (u.size() != v.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "cosine similarity of vectors with different lengths");
  }
  const double nu = u.norm(), nv = v.norm();
  if (nu == 0.0 || nv == 0.0) return 0.0;
  return u.dot(v) / (nu * nv);
}

SimilarityGraph::SimilarityGraph(int n, double threshold,
                                 std::vector<Edge> edges)
    : n_(n), threshold_(threshold), edges_(std::move(edges)), adjacency_(n) {
  std::sort(edges_.begin(), edges_.end(), [](const Edge& a, const Edge& b) {
    return a.i != b.i ? a.i < b.i : a.j < b.j;
  });
  for (const Edge& e : edges_) {
    if (e.i < 0 || e.j >= n || e.i >= e.j) {
      throw Error(ErrorCode::kInvalidParams, "edge endpoints out of order");
    }
    adjacency_[e.i].emplace_back(e.j, e.w);
    adjacency_[e.j].emplace_back(e.i, e.w);
  }
  for (auto& a : adjacency_) std::sort(a.begin(), a.end());
}

double SimilarityGraph::weight(int i, int j) const {
  for (const auto& [v, w] : adjacency_[i]) {
    if (v == j) return w;
  }
  return 0.0;
}

Eigen::MatrixXd SimilarityGraph::Dense() const {
  Eigen::MatrixXd z = Eigen::MatrixXd::Zero(n_, n_);
  for (const Edge& e : edges_) {
    z(e.i, e.j) = e.w;
    z(e.j, e.i) = e.w;
  }
  return z;
}

std::string SimilarityGraph::Serialize() const {
  std::ostringstream out;
  out << "clustrec-graph\t1\n";
  out << "n\t" << n_ << "\n";
  out << "threshold\t" << FormatDouble(threshold_) << "\n";
  out << "edges\t" << edges_.size() << "\n";
  for (const Edge& e : edges_) {
    out << e.i << '\t' << e.j << '\t' << FormatDouble(e.w) << "\n";
  }
  return out.str();
}

SimilarityGraph SimilarityGraph::Parse(const std::string& text) {
  const auto lines = SplitLines(text);
  auto corrupt = [](const std::string& why) {
    return Error(ErrorCode::kCorruptArtifact, "graph: " + why);
  };
  if (lines.size() < 4 || lines[0] != "clustrec-graph\t1") {
    throw corrupt("missing header");
  }
  auto value = [&](std::size_t i, std::string_view key) {
    const auto parts = Split(lines[i], '\t');
    if (parts.size() != 2 || parts[0] != key) throw corrupt("bad " + std::string(key));
    return parts[1];
  };
  const int n = static_cast<int>(ParseInt(value(1, "n")));
  const double threshold = ParseDouble(value(2, "threshold"));
  const auto count = static_cast<std::size_t>(ParseInt(value(3, "edges")));
  if (lines.size() != 4 + count) throw corrupt("edge count mismatch");
  std::vector<Edge> edges;
  for (std::size_t k = 0; k < count; ++k) {
    const auto parts = Split(lines[4 + k], '\t');
    if (parts.size() != 3) throw corrupt("bad edge line");
    edges.push_back({static_cast<int>(ParseInt(parts[0])),
                     static_cast<int>(ParseInt(parts[1])),
                     ParseDouble(parts[2])});
  }
  return SimilarityGraph(n, threshold, std::move(edges));
}

SimilarityGraph BuildSimilarityGraph(const ReducedDataset& r,
                                     double threshold) {
  const auto n = static_cast<int>(r.matrix.rows());
  if (n < 2) {
    throw Error(ErrorCode::kInvalidParams, "graph needs at least two nodes");
  }
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double s = CosineSimilarity(r.matrix.row(i), r.matrix.row(j));
      if (s > threshold) edges.push_back({i, j, s});
    }
  }
  return SimilarityGraph(n, threshold, std::move(edges));
}

}  // namespace clustrec
