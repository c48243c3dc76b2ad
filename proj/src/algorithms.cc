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

#include "clustrec/algorithms.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <mutex>
#include <sstream>

#include "clustrec/error.hpp"

namespace clustrec {
namespace {

struct Entry {
  AlgorithmInfo info;
  ClustererFactory factory;
};

std::mutex& RegistryMutex() {
  static std::mutex mu;
  return mu;
}

std::vector<Entry>& Registry() {
  static std::vector<Entry> entries = [] {
    std::vector<Entry> e;
    auto add = [&e](std::string name, bool deterministic, bool needs_k,
                    bool density, ClustererFactory f) {
      AlgorithmInfo info{std::move(name), static_cast<int>(e.size()),
                         deterministic, needs_k, density};
      e.push_back({std::move(info), std::move(f)});
    };
    add("MST", true, true, false, [] { return detail::MakeMst(); });
    add("SL", true, true, false, [] { return detail::MakeLinkage('S'); });
    add("AL", true, true, false, [] { return detail::MakeLinkage('A'); });
    add("CL", true, true, false, [] { return detail::MakeLinkage('C'); });
    add("WL", true, true, false, [] { return detail::MakeLinkage('W'); });
    add("KM", false, true, false, [] { return detail::MakeKMeans(); });
    add("KHM", false, true, false,
        [] { return detail::MakeKHarmonicMeans(); });
    add("KKM", false, true, false, [] { return detail::MakeKernelKMeans(); });
    add("MBK", false, true, false,
        [] { return detail::MakeMiniBatchKMeans(); });
    add("FC", false, true, false, [] { return detail::MakeFuzzyCMeans(); });
    add("DBSCAN", true, false, true, [] { return detail::MakeDbscan(); });
    add("MS", true, false, true, [] { return detail::MakeMeanShift(); });
    add("GMF", false, true, false,
        [] { return detail::MakeGaussianMixture('F'); });
    add("GMT", false, true, false,
        [] { return detail::MakeGaussianMixture('T'); });
    add("GMD", false, true, false,
        [] { return detail::MakeGaussianMixture('D'); });
    return e;
  }();
  return entries;
}

const Entry& FindEntry(std::string_view name) {
  auto& reg = Registry();
  for (const auto& e : reg) {
    if (e.info.name == name) return e;
  }
  throw Error(ErrorCode::kInvalidParams,
              "unknown algorithm '" + std::string(name) + "'");
}

}  // namespace

std::vector<AlgorithmInfo> SupportedAlgorithms() {
  std::lock_guard lock(RegistryMutex());
  std::vector<AlgorithmInfo> out;
  for (const auto& e : Registry()) out.push_back(e.info);
  return out;
}

AlgorithmInfo FindAlgorithm(std::string_view name) {
  std::lock_guard lock(RegistryMutex());
  return FindEntry(name).info;
}

AlgorithmInfo RegisterAlgorithm(AlgorithmInfo info, ClustererFactory factory) {
  std::lock_guard lock(RegistryMutex());
  auto& reg = Registry();
  for (const auto& e : reg) {
    if (e.info.name == info.name) {
      throw Error(ErrorCode::kInvalidParams,
                  "algorithm '" + info.name + "' already registered");
    }
  }
  info.ordinal = static_cast<int>(reg.size());
  reg.push_back({info, std::move(factory)});
  return info;
}

std::unique_ptr<Clusterer> MakeClusterer(std::string_view name) {
  ClustererFactory factory;
  {
    std::lock_guard lock(RegistryMutex());
    factory = FindEntry(name).factory;
  }
  return factory();
}

std::string CapabilityTable() {
  std::ostringstream out;
  out << "# algorithms\n";
  out << "name\tordinal\tdeterministic\tneeds_k\tdensity_based\n";
  for (const auto& a : SupportedAlgorithms()) {
    out << a.name << '\t' << a.ordinal << '\t' << a.deterministic << '\t'
        << a.needs_k << '\t' << a.density_based << '\n';
  }
  out << "# indices\n";
  out << "name\tordinal\torientation\n";
  int ordinal = 0;
  for (IndexId id : AllIndices()) {
    out << IndexName(id) << '\t' << ordinal++ << '\t'
        << (GetOrientation(id) == Orientation::kMaximize ? "maximize"
                                                         : "minimize")
        << '\n';
  }
  return out.str();
}

std::string ParamPoint::ToString() const {
  std::vector<std::string> parts;
  if (k > 0) parts.push_back("k=" + std::to_string(k));
  if (eps > 0) parts.push_back("eps=" + FormatDouble(eps));
  if (min_pts > 0) parts.push_back("min_pts=" + std::to_string(min_pts));
  if (bandwidth > 0) parts.push_back("bandwidth=" + FormatDouble(bandwidth));
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += ';';
    out += parts[i];
  }
  return out.empty() ? "-" : out;
}

ParamPoint ParamPoint::Parse(std::string_view text) {
  ParamPoint p;
  if (text == "-" || text.empty()) return p;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t end = std::min(text.find(';', start), text.size());
    const auto part = text.substr(start, end - start);
    const auto eq = part.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorCode::kParse, "bad parameter '" + std::string(part) + "'");
    }
    const auto key = part.substr(0, eq);
    const auto value = std::string(part.substr(eq + 1));
    if (key == "k") {
      p.k = std::stoi(value);
    } else if (key == "eps") {
      p.eps = std::stod(value);
    } else if (key == "min_pts") {
      p.min_pts = std::stoi(value);
    } else if (key == "bandwidth") {
      p.bandwidth = std::stod(value);
    } else {
      throw Error(ErrorCode::kParse, "unknown parameter '" + std::string(key) + "'");
    }
    start = end + 1;
  }
  return p;
}

void Canonicalize(ClusteringSolution& s) {
  std::vector<int> remap;
  int next = 0;
  for (int& label : s.labels) {
    if (label < 0) {
      label = -1;
      continue;
    }
    if (static_cast<std::size_t>(label) >= remap.size()) {
      remap.resize(label + 1, -1);
    }
    if (remap[label] < 0) remap[label] = next++;
    label = remap[label];
  }
  s.k_effective = next;
}

void HyperparamGrid::Validate() const {
  if (k_min < 2 || k_max < k_min) {
    throw Error(ErrorCode::kInvalidParams,
                "k range must satisfy 2 <= k_min <= k_max");
  }
  for (double q : eps_quantiles) {
    if (!(q > 0.0 && q < 1.0)) {
      throw Error(ErrorCode::kInvalidParams, "eps quantiles must be in (0,1)");
    }
  }
  for (double q : bandwidth_quantiles) {
    if (!(q > 0.0 && q < 1.0)) {
      throw Error(ErrorCode::kInvalidParams,
                  "bandwidth quantiles must be in (0,1)");
    }
  }
  for (int p : min_pts) {
    if (p < 1) throw Error(ErrorCode::kInvalidParams, "min_pts must be >= 1");
  }
}

ClusteringSolution RunAlgorithm(const NumericDataset& d,
                                std::string_view algorithm,
                                const ParamPoint& params, std::uint64_t seed) {
  auto c = MakeClusterer(algorithm);
  c->Prepare(d);
  return c->Run(params, seed);
}

std::vector<ParamPoint> GridPoints(const NumericDataset& d,
                                   const AlgorithmInfo& info,
                                   const HyperparamGrid& grid) {
  grid.Validate();
  std::vector<ParamPoint> points;
  if (info.needs_k) {
    const int k_hi = std::min<int>(grid.k_max, static_cast<int>(d.n()) - 1);
    for (int k = grid.k_min; k <= k_hi; ++k) points.push_back({.k = k});
    return points;
  }
  const Eigen::MatrixXd dist = detail::PairwiseDistances(d.matrix);
  if (info.name == "DBSCAN") {
    for (double q : grid.eps_quantiles) {
      const double eps = detail::DistanceQuantile(dist, q);
      for (int mp : grid.min_pts) points.push_back({.eps = eps, .min_pts = mp});
    }
  } else {
    for (double q : grid.bandwidth_quantiles) {
      points.push_back({.bandwidth = detail::DistanceQuantile(dist, q)});
    }
  }
  return points;
}

std::vector<std::optional<TuneResult>> TuneMany(
    const NumericDataset& d, const IndexContext& ctx,
    std::string_view algorithm, std::span<const IndexId> indices,
    const HyperparamGrid& grid, int repeats, std::uint64_t seed,
    TuneCounters* counters) {
  if (repeats < 1) {
    throw Error(ErrorCode::kInvalidParams, "repeats must be >= 1");
  }
  const AlgorithmInfo info = FindAlgorithm(algorithm);
  auto clusterer = MakeClusterer(algorithm);
  clusterer->Prepare(d);
  const int runs = info.deterministic ? 1 : repeats;

  std::vector<std::optional<TuneResult>> best(indices.size());
  for (const ParamPoint& point : GridPoints(d, info, grid)) {
    std::vector<double> sums(indices.size(), 0.0);
    std::vector<bool> valid(indices.size(), true);
    ClusteringSolution first;
    bool failed = false;
    for (int r = 0; r < runs && !failed; ++r) {
      ClusteringSolution sol;
      try {
        sol = clusterer->Run(point, MixSeed(seed, static_cast<std::uint64_t>(r)));
      } catch (const Error&) {
        failed = true;
        break;
      }
      if (counters) counters->runs.fetch_add(1, std::memory_order_relaxed);
      for (std::size_t i = 0; i < indices.size(); ++i) {
        if (!valid[i]) continue;
        const IndexScore s = ComputeIndex(ctx, sol.labels, indices[i]);
        if (s.defined) {
          sums[i] += s.value;
        } else {
          valid[i] = false;
        }
      }
      if (r == 0) first = std::move(sol);
    }
    if (failed) continue;
    for (std::size_t i = 0; i < indices.size(); ++i) {
      if (!valid[i]) continue;
      const double mean = sums[i] / runs;
      if (!best[i] || Better(GetOrientation(indices[i]), mean, best[i]->score)) {
        best[i] = TuneResult{point, first, mean};
      }
    }
  }
  return best;
}

TuneResult TuneK(const NumericDataset& d, std::string_view algorithm,
                 IndexId index, const HyperparamGrid& grid, int repeats,
                 std::uint64_t seed) {
  const IndexContext ctx(d);
  const IndexId ids[] = {index};
  auto result = TuneMany(d, ctx, algorithm, ids, grid, repeats, seed);
  if (!result[0]) {
    throw Error(ErrorCode::kNoValidConfiguration,
                std::string(algorithm) + " on " + d.name +
                    ": no grid point produced a defined " +
                    std::string(IndexName(index)));
  }
  return std::move(*result[0]);
}

namespace detail {

Eigen::MatrixXd PairwiseDistances(const Eigen::MatrixXd& x) {
  const Eigen::Index n = x.rows();
  Eigen::MatrixXd d(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    d(i, i) = 0.0;
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double v = (x.row(i) - x.row(j)).norm();
      d(i, j) = v;
      d(j, i) = v;
    }
  }
  return d;
}

double DistanceQuantile(const Eigen::MatrixXd& distances, double q) {
  std::vector<double> values;
  const Eigen::Index n = distances.rows();
  values.reserve(static_cast<std::size_t>(n * (n - 1) / 2));
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) values.push_back(distances(i, j));
  }
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  const double pos = q * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, values.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return values[lo] + frac * (values[hi] - values[lo]);
}

RowMatrix KMeansPlusPlus(const RowMatrix& x, int k, Rng& rng) {
  const Eigen::Index n = x.rows();
  RowMatrix centers(k, x.cols());
  centers.row(0) = x.row(static_cast<Eigen::Index>(rng.UniformInt(n)));
  std::vector<double> d2(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    d2[i] = (x.row(i) - centers.row(0)).squaredNorm();
  }
  for (int c = 1; c < k; ++c) {
    double total = 0.0;
    for (double v : d2) total += v;
    Eigen::Index pick;
    if (total <= 0.0) {
      pick = static_cast<Eigen::Index>(rng.UniformInt(n));
    } else {
      pick = static_cast<Eigen::Index>(rng.Categorical(d2));
    }
    centers.row(c) = x.row(pick);
    for (Eigen::Index i = 0; i < n; ++i) {
      d2[i] = std::min(d2[i], (x.row(i) - centers.row(c)).squaredNorm());
    }
  }
  return centers;
}

void CheckK(const ParamPoint& p, Eigen::Index n, std::string_view algorithm) {
  if (p.k < 1 || p.k > n) {
    throw Error(ErrorCode::kInvalidParams,
                std::string(algorithm) + ": k=" + std::to_string(p.k) +
                    " outside [1, n=" + std::to_string(n) + "]");
  }
}

}  // namespace detail
}  // namespace clustrec
