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

#include "clustrec/gcn.hpp"

#include <cmath>
#include <set>
#include <sstream>

#include "clustrec/dataset.hpp"
#include "clustrec/error.hpp"
#include "clustrec/parallel.hpp"
#include "clustrec/random.hpp"
#include "clustrec/serialize.hpp"

namespace clustrec {

Eigen::MatrixXd NormalizeAdjacency(const Eigen::MatrixXd& z) {
  const Eigen::Index n = z.rows();
  if (z.cols() != n) {
    throw Error(ErrorCode::kDimensionMismatch, "adjacency must be square");
  }
  Eigen::MatrixXd zt = z;
  zt.diagonal().array() += 1.0;
  Eigen::VectorXd degree(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double b = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) b += zt(i, j);
    degree(i) = b;
  }
  Eigen::MatrixXd f(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      f(i, j) = zt(i, j) / std::sqrt(degree(i) * degree(j));
    }
  }
  return f;
}

void GcnConfig::Validate() const {
  if (layers < 2 || layers > 6) {
    throw Error(ErrorCode::kInvalidParams, "GCN layers must be in 2..6");
  }
  if (embedding < 1) throw Error(ErrorCode::kInvalidParams, "embedding must be >= 1");
  if (!(lr >= 0.0)) throw Error(ErrorCode::kInvalidParams, "lr must be >= 0");
  if (max_epochs < 1 || patience < 1) {
    throw Error(ErrorCode::kInvalidParams, "epochs and patience must be >= 1");
  }
}

std::string GcnConfig::ToString() const {
  std::ostringstream out;
  out << "layers=" << layers << ";embedding=" << embedding
      << ";lr=" << FormatDouble(lr) << ";max_epochs=" << max_epochs
      << ";patience=" << patience << ";seed=" << seed;
  return out.str();
}

GcnModel GcnModel::Init(int input_dim, int embedding, int layers, int classes,
                        std::uint64_t seed) {
  GcnModel m;
  m.input_dim = input_dim;
  m.embedding = embedding;
  m.classes = classes;
  Rng rng(seed);
  auto glorot = [&](int rows, int cols) {
    const double a = std::sqrt(6.0 / (rows + cols));
    Eigen::MatrixXd w(rows, cols);
    for (int i = 0; i < rows; ++i) {
      for (int j = 0; j < cols; ++j) w(i, j) = rng.Uniform(-a, a);
    }
    return w;
  };
  for (int l = 0; l < layers; ++l) {
    m.tensors.push_back(glorot(l == 0 ? input_dim : embedding, embedding));
  }
  m.tensors.push_back(glorot(embedding, classes));
  m.tensors.push_back(Eigen::MatrixXd::Zero(1, classes));
  return m;
}

// Header line "clustrec-gcn 1 <input_dim> <embedding> <classes> <layers>"
// followed by one matrix block per tensor.
std::string GcnModel::Serialize() const {
  std::string out = "clustrec-gcn 1 " + std::to_string(input_dim) + " " +
                    std::to_string(embedding) + " " + std::to_string(classes) +
                    " " + std::to_string(layers()) + "\n";
  for (const auto& t : tensors) AppendMatrix(out, t);
  return out;
}

GcnModel GcnModel::Parse(const std::string& data) {
  const std::size_t eol = data.find('\n');
  if (eol == std::string::npos) {
    throw Error(ErrorCode::kCorruptArtifact, "gcn model: missing header");
  }
  const auto head = Split(std::string_view(data).substr(0, eol), ' ');
  if (head.size() != 6 || head[0] != "clustrec-gcn" || head[1] != "1") {
    throw Error(ErrorCode::kCorruptArtifact, "gcn model: bad header");
  }
  GcnModel m;
  m.input_dim = static_cast<int>(ParseInt(head[2]));
  m.embedding = static_cast<int>(ParseInt(head[3]));
  m.classes = static_cast<int>(ParseInt(head[4]));
  const int layers = static_cast<int>(ParseInt(head[5]));
  std::size_t pos = eol + 1;
  for (int t = 0; t < layers + 2; ++t) m.tensors.push_back(ReadMatrix(data, pos));
  if (pos != data.size()) {
    throw Error(ErrorCode::kCorruptArtifact, "gcn model: trailing bytes");
  }
  return m;
}

GraphInput MakeGraphInput(std::string name, const Eigen::MatrixXd& z,
                          Eigen::MatrixXd x, int label) {
  if (x.rows() != z.rows()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "node feature rows differ from the node count");
  }
  return {std::move(name), NormalizeAdjacency(z), std::move(x), label};
}

GcnForward Forward(const GcnModel& model, const Eigen::MatrixXd& f,
                   const Eigen::MatrixXd& x) {
  if (x.cols() != model.input_dim) {
    throw Error(ErrorCode::kDimensionMismatch,
                "node features have " + std::to_string(x.cols()) +
                    " columns, model expects " + std::to_string(model.input_dim));
  }
  if (f.rows() != x.rows() || f.cols() != x.rows()) {
    throw Error(ErrorCode::kDimensionMismatch, "adjacency and features disagree");
  }
  GcnForward out;
  out.hidden.push_back(x);
  for (int l = 0; l < model.layers(); ++l) {
    const Eigen::MatrixXd a = (f * out.hidden.back()) * model.tensors[l];
    out.hidden.push_back(a.cwiseMax(0.0));
  }
  out.embedding = out.hidden.back().colwise().mean();
  out.logits = out.embedding * model.classifier() + model.bias();
  return out;
}

namespace {

Eigen::RowVectorXd Softmax(const Eigen::RowVectorXd& z) {
  const Eigen::RowVectorXd e = (z.array() - z.maxCoeff()).exp();
  return e / e.sum();
}

double CrossEntropy(const Eigen::RowVectorXd& logits, int label) {
  const double top = logits.maxCoeff();
  const double lse = top + std::log((logits.array() - top).exp().sum());
  return lse - logits(label);
}

}  // namespace

double Loss(const GcnModel& model, const GraphInput& g) {
  return CrossEntropy(Forward(model, g.f, g.x).logits, g.label);
}

double LossAndGradient(const GcnModel& model, const GraphInput& g,
                       std::vector<Eigen::MatrixXd>* gradient) {
  const GcnForward fw = Forward(model, g.f, g.x);
  const int layers = model.layers();
  gradient->resize(model.tensors.size());
  Eigen::RowVectorXd dlogits = Softmax(fw.logits);
  dlogits(g.label) -= 1.0;
  (*gradient)[layers] = fw.embedding.transpose() * dlogits;
  (*gradient)[layers + 1] = dlogits;
  const Eigen::RowVectorXd de = dlogits * model.classifier().transpose();
  const auto n = static_cast<double>(g.x.rows());
  Eigen::MatrixXd dh = (Eigen::VectorXd::Ones(g.x.rows()) * de) / n;
  for (int l = layers - 1; l >= 0; --l) {
    // H_{l+1} > 0 exactly where A_l > 0.
    const Eigen::MatrixXd da =
        (fw.hidden[l + 1].array() > 0.0).select(dh, 0.0);
    const Eigen::MatrixXd fh = g.f * fw.hidden[l];
    (*gradient)[l] = fh.transpose() * da;
    if (l > 0) dh = g.f.transpose() * (da * model.tensors[l].transpose());
  }
  return CrossEntropy(fw.logits, g.label);
}

GcnTrainResult TrainGcn(const std::vector<GraphInput>& graphs, int classes,
                        const GcnConfig& config) {
  config.Validate();
  if (graphs.empty()) {
    throw Error(ErrorCode::kSingleClassCorpus, "no training graphs");
  }
  std::set<int> labels;
  for (const auto& g : graphs) {
    if (g.label < 0 || g.label >= classes) {
      throw Error(ErrorCode::kInvalidParams, "graph label out of range");
    }
    labels.insert(g.label);
  }
  if (labels.size() < 2) {
    throw Error(ErrorCode::kSingleClassCorpus,
                "training graphs carry a single label");
  }
  const int input_dim = static_cast<int>(graphs[0].x.cols());
  GcnTrainResult result;
  result.model = GcnModel::Init(input_dim, config.embedding, config.layers,
                                classes, config.seed);
  GcnModel& model = result.model;
  const std::size_t nt = model.tensors.size();

  std::vector<std::vector<Eigen::MatrixXd>> per_graph(graphs.size());
  std::vector<double> losses(graphs.size());
  std::vector<Eigen::MatrixXd> grad(nt);
  // Mean loss and gradient; per-graph results are reduced in graph order.
  auto evaluate = [&] {
    ParallelFor(graphs.size(), config.jobs, [&](std::size_t i) {
      losses[i] = LossAndGradient(model, graphs[i], &per_graph[i]);
    });
    double loss = 0.0;
    for (std::size_t t = 0; t < nt; ++t) {
      grad[t] = Eigen::MatrixXd::Zero(model.tensors[t].rows(), model.tensors[t].cols());
    }
    for (std::size_t i = 0; i < graphs.size(); ++i) {
      loss += losses[i];
      for (std::size_t t = 0; t < nt; ++t) grad[t] += per_graph[i][t];
    }
    const auto count = static_cast<double>(graphs.size());
    for (auto& g : grad) g /= count;
    return loss / count;
  };

  constexpr double kBeta1 = 0.9, kBeta2 = 0.999, kEps = 1e-8;
  std::vector<Eigen::MatrixXd> m1(nt), m2(nt);
  for (std::size_t t = 0; t < nt; ++t) {
    m1[t] = Eigen::MatrixXd::Zero(model.tensors[t].rows(), model.tensors[t].cols());
    m2[t] = m1[t];
  }
  result.initial_loss = evaluate();
  double best = result.initial_loss;
  int stall = 0;
  for (int epoch = 1; epoch <= config.max_epochs; ++epoch) {
    const double c1 = 1.0 - std::pow(kBeta1, epoch);
    const double c2 = 1.0 - std::pow(kBeta2, epoch);
    for (std::size_t t = 0; t < nt; ++t) {
      m1[t] = kBeta1 * m1[t] + (1.0 - kBeta1) * grad[t];
      m2[t] = kBeta2 * m2[t] + (1.0 - kBeta2) * grad[t].cwiseAbs2();
      model.tensors[t].array() -=
          config.lr * (m1[t].array() / c1) /
          ((m2[t].array() / c2).sqrt() + kEps);
    }
    const double loss = evaluate();
    result.loss_history.push_back(loss);
    result.epochs = epoch;
    if (loss < best) {
      best = loss;
      stall = 0;
    } else if (++stall >= config.patience) {
      break;
    }
  }
  int correct = 0;
  for (const auto& g : graphs) {
    Eigen::Index arg = 0;
    Forward(model, g.f, g.x).logits.maxCoeff(&arg);
    correct += static_cast<int>(arg) == g.label;
  }
  result.accuracy = static_cast<double>(correct) / static_cast<double>(graphs.size());
  return result;
}

std::vector<Eigen::RowVectorXd> EmbedAll(const GcnModel& model,
                                         const std::vector<GraphInput>& graphs) {
  std::vector<Eigen::RowVectorXd> out;
  out.reserve(graphs.size());
  for (const auto& g : graphs) out.push_back(Forward(model, g.f, g.x).embedding);
  return out;
}

}  // namespace clustrec
