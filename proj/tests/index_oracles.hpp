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

// Direct, quadratic-or-worse implementations of the validity indices over a
// noise-free labelling with labels 0..k-1.

#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include <Eigen/Dense>

namespace clustrec::oracle {

struct Labelled {
  Eigen::MatrixXd x;
  std::vector<int> y;
  int k = 0;
};

// Drops rows labelled -1 and renumbers the rest densely.
inline Labelled DropNoise(const Eigen::MatrixXd& x, const std::vector<int>& labels) {
  Labelled out;
  std::vector<int> ids;
  std::vector<int> rows;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] < 0) continue;
    auto it = std::find(ids.begin(), ids.end(), labels[i]);
    if (it == ids.end()) {
      ids.push_back(labels[i]);
      it = ids.end() - 1;
    }
    rows.push_back(static_cast<int>(i));
    out.y.push_back(static_cast<int>(it - ids.begin()));
  }
  out.k = static_cast<int>(ids.size());
  out.x.resize(static_cast<Eigen::Index>(rows.size()), x.cols());
  for (std::size_t r = 0; r < rows.size(); ++r) out.x.row(r) = x.row(rows[r]);
  return out;
}

inline double Dist(const Labelled& l, int i, int j) {
  return (l.x.row(i) - l.x.row(j)).norm();
}

inline Eigen::RowVectorXd Centroid(const Labelled& l, int c) {
  Eigen::RowVectorXd s = Eigen::RowVectorXd::Zero(l.x.cols());
  int n = 0;
  for (std::size_t i = 0; i < l.y.size(); ++i) {
    if (l.y[i] == c) {
      s += l.x.row(i);
      ++n;
    }
  }
  return s / n;
}

inline double Diameter(const Labelled& l) {
  double d = 0;
  const int n = static_cast<int>(l.y.size());
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (l.y[i] == l.y[j]) d = std::max(d, Dist(l, i, j));
    }
  }
  return d;
}

inline double MinCentroidGap(const Labelled& l) {
  double g = std::numeric_limits<double>::infinity();
  for (int a = 0; a < l.k; ++a) {
    for (int b = 0; b < l.k; ++b) {
      if (a != b) g = std::min(g, (Centroid(l, a) - Centroid(l, b)).norm());
    }
  }
  return g;
}

inline double BezdekPal(const Labelled& l) { return MinCentroidGap(l) / Diameter(l); }

inline double Dunn(const Labelled& l) {
  double sep = std::numeric_limits<double>::infinity();
  const int n = static_cast<int>(l.y.size());
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (l.y[i] != l.y[j]) sep = std::min(sep, Dist(l, i, j));
    }
  }
  return sep / Diameter(l);
}

inline double CalinskiHarabasz(const Labelled& l) {
  const int n = static_cast<int>(l.y.size());
  const Eigen::RowVectorXd mean = l.x.colwise().mean();
  double b = 0, w = 0;
  for (int i = 0; i < n; ++i) {
    const Eigen::RowVectorXd c = Centroid(l, l.y[i]);
    b += (c - mean).squaredNorm();
    w += (l.x.row(i) - c).squaredNorm();
  }
  return (b / (l.k - 1)) / (w / (n - l.k));
}

inline double Silhouette(const Labelled& l) {
  const int n = static_cast<int>(l.y.size());
  double total = 0;
  for (int i = 0; i < n; ++i) {
    int own = 0;
    for (int j = 0; j < n; ++j) own += l.y[j] == l.y[i];
    if (own == 1) continue;
    double a = 0;
    for (int j = 0; j < n; ++j) {
      if (j != i && l.y[j] == l.y[i]) a += Dist(l, i, j);
    }
    a /= own - 1;
    double b = std::numeric_limits<double>::infinity();
    for (int c = 0; c < l.k; ++c) {
      if (c == l.y[i]) continue;
      double s = 0;
      int m = 0;
      for (int j = 0; j < n; ++j) {
        if (l.y[j] == c) {
          s += Dist(l, i, j);
          ++m;
        }
      }
      b = std::min(b, s / m);
    }
    total += (b - a) / std::max(a, b);
  }
  return total / n;
}

// Point-biserial correlation computed as a Pearson correlation between the
// distances and the 0/1 between-cluster indicator (population form).
inline double MilliganCooper(const Labelled& l) {
  std::vector<double> d, ind;
  const int n = static_cast<int>(l.y.size());
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      d.push_back(Dist(l, i, j));
      ind.push_back(l.y[i] != l.y[j] ? 1.0 : 0.0);
    }
  }
  const double md = std::accumulate(d.begin(), d.end(), 0.0) / d.size();
  const double mi = std::accumulate(ind.begin(), ind.end(), 0.0) / ind.size();
  double sdi = 0, sdd = 0, sii = 0;
  for (std::size_t t = 0; t < d.size(); ++t) {
    sdi += (d[t] - md) * (ind[t] - mi);
    sdd += (d[t] - md) * (d[t] - md);
    sii += (ind[t] - mi) * (ind[t] - mi);
  }
  return sdi / std::sqrt(sdd * sii);
}

inline double DaviesBouldin(const Labelled& l) {
  std::vector<double> s(l.k, 0);
  std::vector<int> cnt(l.k, 0);
  for (std::size_t i = 0; i < l.y.size(); ++i) {
    s[l.y[i]] += (l.x.row(i) - Centroid(l, l.y[i])).norm();
    ++cnt[l.y[i]];
  }
  for (int c = 0; c < l.k; ++c) s[c] /= cnt[c];
  double total = 0;
  for (int a = 0; a < l.k; ++a) {
    double worst = 0;
    for (int b = 0; b < l.k; ++b) {
      if (a != b) {
        worst = std::max(worst, (s[a] + s[b]) / (Centroid(l, a) - Centroid(l, b)).norm());
      }
    }
    total += worst;
  }
  return total / l.k;
}

// Connectivity with L nearest neighbours; equal distances keep lower index
// first.
inline double Connectivity(const Labelled& l, int L = 10) {
  const int n = static_cast<int>(l.y.size());
  double total = 0;
  for (int i = 0; i < n; ++i) {
    std::vector<std::pair<double, int>> nb;
    for (int j = 0; j < n; ++j) {
      if (j != i) nb.push_back({Dist(l, i, j), j});
    }
    std::sort(nb.begin(), nb.end());
    for (int r = 0; r < std::min<int>(L, static_cast<int>(nb.size())); ++r) {
      if (l.y[nb[r].second] != l.y[i]) total += 1.0 / (r + 1);
    }
  }
  return total;
}

inline double CIndex(const Labelled& l) {
  std::vector<double> all;
  double sw = 0;
  int nw = 0;
  const int n = static_cast<int>(l.y.size());
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      all.push_back(Dist(l, i, j));
      if (l.y[i] == l.y[j]) {
        sw += all.back();
        ++nw;
      }
    }
  }
  std::sort(all.begin(), all.end());
  double smin = 0, smax = 0;
  for (int t = 0; t < nw; ++t) {
    smin += all[t];
    smax += all[all.size() - 1 - t];
  }
  return (sw - smin) / (smax - smin);
}

inline Eigen::RowVectorXd PopulationVariance(const Eigen::MatrixXd& x) {
  const Eigen::RowVectorXd mean = x.colwise().mean();
  return (x.rowwise() - mean).array().square().colwise().mean();
}

inline double SDScat(const Labelled& l) {
  double total = 0;
  for (int c = 0; c < l.k; ++c) {
    std::vector<int> rows;
    for (std::size_t i = 0; i < l.y.size(); ++i) {
      if (l.y[i] == c) rows.push_back(static_cast<int>(i));
    }
    Eigen::MatrixXd sub(static_cast<Eigen::Index>(rows.size()), l.x.cols());
    for (std::size_t r = 0; r < rows.size(); ++r) sub.row(r) = l.x.row(rows[r]);
    total += PopulationVariance(sub).norm();
  }
  return total / l.k / PopulationVariance(l.x).norm();
}

inline double XieBeni(const Labelled& l) {
  double w = 0;
  for (std::size_t i = 0; i < l.y.size(); ++i) {
    w += (l.x.row(i) - Centroid(l, l.y[i])).squaredNorm();
  }
  const double g = MinCentroidGap(l);
  return w / (static_cast<double>(l.y.size()) * g * g);
}

}  // namespace clustrec::oracle
