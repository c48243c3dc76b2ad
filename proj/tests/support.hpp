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

#include <unistd.h>

#include <atomic>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "clustrec/dataset.hpp"
#include "clustrec/graph.hpp"
#include "clustrec/random.hpp"

namespace clustrec::testing {

// Directory removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag = "t") {
    static std::atomic<int> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("clustrec-" + tag + "-" + std::to_string(::getpid()) + "-" +
             std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::string str() const { return path_.string(); }

 private:
  std::filesystem::path path_;
};

inline void WriteText(const std::filesystem::path& p, const std::string& s) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  out << s;
}

inline std::string ReadText(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// n x m matrix with entries uniform in [0, 1).
inline NumericDataset UniformDataset(int n, int m, std::uint64_t seed,
                                     const std::string& name = "uniform") {
  Rng rng(seed);
  NumericDataset d;
  d.name = name;
  d.matrix.resize(n, m);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) d.matrix(i, j) = rng.Uniform();
  }
  for (int j = 0; j < m; ++j) d.feature_names.push_back("f" + std::to_string(j));
  return d;
}

// k well separated Gaussian groups of `per` points in m dimensions, scaled
// into [0, 1]. labels receives the generating group of every row.
inline NumericDataset SeparatedBlobs(int k, int per, int m, std::uint64_t seed,
                                     std::vector<int>* labels = nullptr) {
  Rng rng(seed);
  NumericDataset d;
  d.name = "blobs";
  d.matrix.resize(k * per, m);
  if (labels) labels->clear();
  for (int c = 0; c < k; ++c) {
    for (int i = 0; i < per; ++i) {
      for (int j = 0; j < m; ++j) {
        d.matrix(c * per + i, j) = 10.0 * ((c + j) % k) + 0.3 * rng.Normal();
      }
      if (labels) labels->push_back(c);
    }
  }
  const Eigen::RowVectorXd lo = d.matrix.colwise().minCoeff();
  const Eigen::RowVectorXd hi = d.matrix.colwise().maxCoeff();
  for (int r = 0; r < d.matrix.rows(); ++r) {
    d.matrix.row(r) = (d.matrix.row(r) - lo).cwiseQuotient(hi - lo);
  }
  for (int j = 0; j < m; ++j) d.feature_names.push_back("f" + std::to_string(j));
  return d;
}

// Symmetric weighted adjacency with zero diagonal; each pair is an edge with
// probability p.
inline Eigen::MatrixXd RandomAdjacency(int n, double p, Rng& rng) {
  Eigen::MatrixXd z = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (rng.Uniform() < p) z(i, j) = z(j, i) = rng.Uniform(0.9, 1.0);
    }
  }
  return z;
}

inline Eigen::MatrixXd RandomMatrix(int rows, int cols, Rng& rng) {
  Eigen::MatrixXd x(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) x(i, j) = rng.Uniform(-1.0, 1.0);
  }
  return x;
}

}  // namespace clustrec::testing
