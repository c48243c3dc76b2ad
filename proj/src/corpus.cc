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

#include "clustrec/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include <Eigen/Dense>

#include "clustrec/error.hpp"
#include "clustrec/random.hpp"

namespace clustrec {
namespace {

constexpr double kBox = 10.0;

Eigen::VectorXd RandomUnit(Rng& rng, int m) {
  Eigen::VectorXd v(m);
  do {
    for (int k = 0; k < m; ++k) v(k) = rng.Normal();
  } while (v.norm() < 1e-9);
  return v / v.norm();
}

// Cluster centres at least `gap` apart, drawn by rejection in the box.
std::vector<Eigen::VectorXd> Centres(Rng& rng, int k, int m, double gap) {
  std::vector<Eigen::VectorXd> c;
  for (int attempt = 0; static_cast<int>(c.size()) < k; ++attempt) {
    Eigen::VectorXd p(m);
    for (int d = 0; d < m; ++d) p(d) = rng.Uniform(0.0, kBox);
    const bool far = std::all_of(c.begin(), c.end(), [&](const auto& q) {
      return (p - q).norm() >= gap;
    });
    if (far || attempt > 2000) c.push_back(p);
  }
  return c;
}

// Splits n points over k clusters as evenly as the remainder allows.
std::vector<int> Sizes(int n, int k) {
  std::vector<int> s(k, n / k);
  for (int i = 0; i < n % k; ++i) ++s[i];
  return s;
}

void Blobs(Rng& rng, int n, int m, int k, Eigen::MatrixXd& x, std::vector<int>& y) {
  const double sigma = rng.Uniform(0.3, 0.7);
  const auto centres = Centres(rng, k, m, 8.0 * sigma);
  const auto sizes = Sizes(n, k);
  int row = 0;
  for (int c = 0; c < k; ++c) {
    for (int i = 0; i < sizes[c]; ++i, ++row) {
      for (int d = 0; d < m; ++d) x(row, d) = centres[c](d) + sigma * rng.Normal();
      y[row] = c;
    }
  }
}

// Half the clusters are long thin segments, half are chains of small blobs
// that touch along a random direction.
void Elongated(Rng& rng, int n, int m, int k, Eigen::MatrixXd& x,
               std::vector<int>& y) {
  const auto centres = Centres(rng, k, m, 3.0);
  const auto sizes = Sizes(n, k);
  int row = 0;
  for (int c = 0; c < k; ++c) {
    const Eigen::VectorXd dir = RandomUnit(rng, m);
    const double length = rng.Uniform(5.0, 8.0);
    const double width = rng.Uniform(0.08, 0.2);
    const bool chain = c % 2 == 1;
    const int beads = 4;
    for (int i = 0; i < sizes[c]; ++i, ++row) {
      double t;
      if (chain) {
        const int b = static_cast<int>(rng.UniformInt(beads));
        t = (static_cast<double>(b) / (beads - 1) - 0.5) * length +
            0.12 * length * rng.Normal() / beads;
      } else {
        t = rng.Uniform(-0.5, 0.5) * length;
      }
      for (int d = 0; d < m; ++d) {
        x(row, d) = centres[c](d) + t * dir(d) + width * rng.Normal();
      }
      y[row] = c;
    }
  }
}

void Noisy(Rng& rng, int n, int m, int k, Eigen::MatrixXd& x, std::vector<int>& y) {
  const double noise_fraction = rng.Uniform(0.2, 0.35);
  const int noise = static_cast<int>(std::round(noise_fraction * n));
  const double sigma = rng.Uniform(0.2, 0.4);
  const auto centres = Centres(rng, k, m, 10.0 * sigma);
  const auto sizes = Sizes(n - noise, k);
  int row = 0;
  for (int c = 0; c < k; ++c) {
    for (int i = 0; i < sizes[c]; ++i, ++row) {
      for (int d = 0; d < m; ++d) x(row, d) = centres[c](d) + sigma * rng.Normal();
      y[row] = c;
    }
  }
  for (; row < n; ++row) {
    for (int d = 0; d < m; ++d) x(row, d) = rng.Uniform(-1.0, kBox + 1.0);
    y[row] = k;
  }
}

std::string Name(int i) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "ds_%03d", i);
  return buf;
}

}  // namespace

std::string_view RegimeName(Regime r) {
  switch (r) {
    case Regime::kBlobs: return "blobs";
    case Regime::kElongated: return "elongated";
    case Regime::kNoisy: return "noisy";
  }
  return "unknown";
}

std::vector<GeneratedDataset> GenerateCorpus(const CorpusSpec& spec) {
  if (spec.datasets < 1 || spec.min_rows < 10 || spec.max_rows < spec.min_rows ||
      spec.min_dims < 2 || spec.max_dims < spec.min_dims ||
      spec.min_clusters < 2 || spec.max_clusters < spec.min_clusters) {
    throw Error(ErrorCode::kInvalidParams, "invalid corpus spec");
  }
  std::vector<GeneratedDataset> out;
  for (int i = 0; i < spec.datasets; ++i) {
    Rng rng(MixSeed(spec.seed, static_cast<std::uint64_t>(i)));
    const auto regime = static_cast<Regime>(i % 3);
    auto pick = [&](int lo, int hi) {
      return lo + static_cast<int>(rng.UniformInt(static_cast<std::size_t>(hi - lo + 1)));
    };
    const int n = pick(spec.min_rows, spec.max_rows);
    const int m = pick(spec.min_dims, spec.max_dims);
    const int k = pick(spec.min_clusters, spec.max_clusters);
    Eigen::MatrixXd x(n, m);
    std::vector<int> y(n);
    switch (regime) {
      case Regime::kBlobs: Blobs(rng, n, m, k, x, y); break;
      case Regime::kElongated: Elongated(rng, n, m, k, x, y); break;
      case Regime::kNoisy: Noisy(rng, n, m, k, x, y); break;
    }
    // Shuffle rows so cluster membership is not encoded in row order.
    std::vector<int> order(n);
    for (int r = 0; r < n; ++r) order[r] = r;
    rng.Shuffle(order);

    GeneratedDataset g;
    g.regime = regime;
    g.raw.name = Name(i);
    for (int d = 0; d < m; ++d) {
      g.raw.columns.push_back({"x" + std::to_string(d), ColumnKind::kNumeric});
    }
    g.raw.columns.push_back({"class", ColumnKind::kLabel});
    for (int r = 0; r < n; ++r) {
      std::vector<Cell> cells;
      for (int d = 0; d < m; ++d) cells.emplace_back(FormatDouble(x(order[r], d)));
      cells.emplace_back(std::to_string(y[order[r]]));
      g.raw.rows.push_back(std::move(cells));
    }
    out.push_back(std::move(g));
  }
  return out;
}

std::string ToCsv(const RawDataset& raw) {
  std::string out;
  for (std::size_t c = 0; c < raw.columns.size(); ++c) {
    out += (c ? "," : "") + raw.columns[c].name;
  }
  out += "\n";
  for (const auto& row : raw.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += ",";
      if (row[c]) out += *row[c];
    }
    out += "\n";
  }
  return out;
}

void WriteCorpus(const std::vector<GeneratedDataset>& corpus,
                 const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::kIo, "cannot create " + dir.string());
  for (const auto& g : corpus) {
    const auto path = dir / (g.raw.name + ".csv");
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << ToCsv(g.raw);
    if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  }
}

std::vector<std::filesystem::path> ListCsvFiles(const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> files;
  std::error_code ec;
  for (const auto& e : std::filesystem::directory_iterator(dir, ec)) {
    if (e.is_regular_file() && e.path().extension() == ".csv") files.push_back(e.path());
  }
  if (ec) throw Error(ErrorCode::kIo, "cannot list " + dir.string() + ": " + ec.message());
  std::sort(files.begin(), files.end());
  return files;
}

}  // namespace clustrec
