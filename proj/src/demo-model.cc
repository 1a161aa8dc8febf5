// src/demo-model.cc

// Copyright 2026  The cohort authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "cohort/demo-model.h"

#include <cmath>
#include <ostream>
#include <stdexcept>

#include "cohort/errors.h"
#include "cohort/random.h"
#include "cohort/text-io.h"

namespace cohort {

namespace {

Vector ConcatInput(const DemoClassifier &model, const Vector &x, const ConditioningFeature &cond) {
  if (x.size() != model.feature_dim)
    throw std::invalid_argument("demo model: feature length " + std::to_string(x.size()) +
                                ", expected " + std::to_string(model.feature_dim));
  if (static_cast<int>(cond.onehot.size()) != model.num_clusters + 1)
    throw std::invalid_argument("demo model: conditioning length " +
                                std::to_string(cond.onehot.size()) + ", expected " +
                                std::to_string(model.num_clusters + 1));
  Vector input(model.InputDim());
  input.head(model.feature_dim) = x;
  for (int i = 0; i <= model.num_clusters; ++i) input(model.feature_dim + i) = cond.onehot[i];
  return input;
}

Vector Softmax(const Vector &logits) {
  const double top = logits.maxCoeff();
  Vector p = (logits.array() - top).exp().matrix();
  return p / p.sum();
}

void CheckShape(int num_classes, int feature_dim, int num_clusters) {
  if (num_classes < 1 || feature_dim < 0 || num_clusters < 1)
    throw std::invalid_argument("demo model: bad shape");
}

std::vector<LabeledInput> Conditioned(std::span<const DemoExample> data,
                                      const std::vector<ClusterId> &ids, int k) {
  std::vector<LabeledInput> batch;
  batch.reserve(data.size());
  for (std::size_t i = 0; i < data.size(); ++i)
    batch.push_back({data[i].x, OneHot(ids[i], k), data[i].label});
  return batch;
}

}  // namespace

DemoClassifier ZeroClassifier(int num_classes, int feature_dim, int num_clusters) {
  CheckShape(num_classes, feature_dim, num_clusters);
  DemoClassifier m;
  m.num_classes = num_classes;
  m.feature_dim = feature_dim;
  m.num_clusters = num_clusters;
  m.weights = Matrix::Zero(num_classes, m.InputDim());
  m.bias = Vector::Zero(num_classes);
  return m;
}

DemoClassifier InitClassifier(int num_classes, int feature_dim, int num_clusters,
                              std::uint64_t seed) {
  DemoClassifier m = ZeroClassifier(num_classes, feature_dim, num_clusters);
  Rng rng(seed);
  for (Eigen::Index i = 0; i < m.weights.rows(); ++i)
    for (Eigen::Index j = 0; j < m.weights.cols(); ++j) m.weights(i, j) = 0.01 * rng.Normal();
  return m;
}

Vector Forward(const DemoClassifier &model, const Vector &x, const ConditioningFeature &cond) {
  return Softmax(model.weights * ConcatInput(model, x, cond) + model.bias);
}

LossAndGrad ComputeLossAndGrad(const DemoClassifier &model, std::span<const LabeledInput> batch) {
  if (batch.empty()) throw std::invalid_argument("loss_and_grad: empty batch");
  LossAndGrad out;
  out.grad_weights = Matrix::Zero(model.weights.rows(), model.weights.cols());
  out.grad_bias = Vector::Zero(model.num_classes);
  for (const LabeledInput &ex : batch) {
    if (ex.label < 0 || ex.label >= model.num_classes)
      throw std::invalid_argument("loss_and_grad: label out of range");
    Vector input = ConcatInput(model, ex.x, ex.cond);
    Vector logits = model.weights * input + model.bias;
    // log-sum-exp for a loss that stays finite for confident models
    const double top = logits.maxCoeff();
    const double lse = top + std::log((logits.array() - top).exp().sum());
    out.loss += lse - logits(ex.label);
    Vector delta = (logits.array() - lse).exp().matrix();
    delta(ex.label) -= 1.0;
    out.grad_weights += delta * input.transpose();
    out.grad_bias += delta;
  }
  const double inv = 1.0 / static_cast<double>(batch.size());
  out.loss *= inv;
  out.grad_weights *= inv;
  out.grad_bias *= inv;
  return out;
}

TrainResult Train(const TrainConfig &config, std::span<const DemoExample> data, int num_clusters,
                  int num_classes) {
  if (data.empty()) throw std::invalid_argument("train: no data");
  if (!(config.learning_rate > 0.0)) throw std::invalid_argument("train: learning rate must be positive");
  if (config.epochs < 0) throw std::invalid_argument("train: negative epoch count");

  const int feature_dim = static_cast<int>(data.front().x.size());
  TrainResult result;
  result.model = InitClassifier(num_classes, feature_dim, num_clusters, DeriveSeed(config.seed, 0));

  std::vector<ClusterId> truth;
  truth.reserve(data.size());
  for (const DemoExample &ex : data) truth.push_back(ex.cluster);

  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    MaskingPolicy policy{config.p_unknown, DeriveSeed(config.seed, static_cast<std::uint64_t>(epoch) + 1)};
    auto batch = Conditioned(data, ApplyMasking(truth, num_clusters, policy), num_clusters);
    LossAndGrad lg = ComputeLossAndGrad(result.model, batch);
    result.loss_curve.push_back(lg.loss);
    result.model.weights -= config.learning_rate * lg.grad_weights;
    result.model.bias -= config.learning_rate * lg.grad_bias;
  }
  return result;
}

double Evaluate(const DemoClassifier &model, std::span<const DemoExample> data, EvalMode mode) {
  if (data.empty()) throw std::invalid_argument("evaluate: no data");
  const ConditioningFeature unknown = InferenceFeature(model.num_clusters);
  std::size_t correct = 0;
  for (const DemoExample &ex : data) {
    Vector p = mode == EvalMode::kTrueId ? Forward(model, ex.x, OneHot(ex.cluster, model.num_clusters))
                                         : Forward(model, ex.x, unknown);
    Eigen::Index best = 0;
    for (Eigen::Index c = 1; c < p.size(); ++c)
      if (p(c) > p(best)) best = c;
    if (best == ex.label) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(data.size());
}

std::vector<DemoExample> MakeDemoData(const DemoDataConfig &cfg) {
  if (cfg.num_clusters < 1 || cfg.num_classes < 2 || cfg.feature_dim < 1 || cfg.num_examples < 1)
    throw std::invalid_argument("demo data: bad shape");
  Rng task(cfg.task_seed);
  std::vector<Vector> prototypes(cfg.num_classes, Vector(cfg.feature_dim));
  for (Vector &p : prototypes)
    for (Eigen::Index j = 0; j < p.size(); ++j) p(j) = cfg.prototype_scale * task.Normal();
  std::vector<Vector> shifts(cfg.num_clusters, Vector(cfg.feature_dim));
  for (Vector &s : shifts)
    for (Eigen::Index j = 0; j < s.size(); ++j) s(j) = cfg.cluster_shift * task.Normal();

  Rng rng(cfg.sample_seed);

  const double other_prob = (1.0 - cfg.preferred_label_prob) / (cfg.num_classes - 1);
  std::vector<DemoExample> data;
  data.reserve(cfg.num_examples);
  for (int i = 0; i < cfg.num_examples; ++i) {
    const int cluster = static_cast<int>(rng.UniformIndex(cfg.num_clusters));
    const int preferred = cluster % cfg.num_classes;
    int label = preferred;
    double u = rng.Uniform();
    if (u >= cfg.preferred_label_prob) {
      int slot = std::min(cfg.num_classes - 2,
                          static_cast<int>((u - cfg.preferred_label_prob) / other_prob));
      label = slot >= preferred ? slot + 1 : slot;
    }
    DemoExample ex;
    ex.cluster = ClusterId{cluster};
    ex.label = label;
    ex.x = prototypes[label] + shifts[cluster];
    for (Eigen::Index j = 0; j < ex.x.size(); ++j) ex.x(j) += cfg.noise_sigma * rng.Normal();
    data.push_back(std::move(ex));
  }
  return data;
}

DemoExperiment RunDemoExperiment(const TrainConfig &config, const DemoDataConfig &task) {
  DemoDataConfig data_cfg = task;
  data_cfg.task_seed = config.seed;
  data_cfg.sample_seed = DeriveSeed(config.seed, 1);
  const auto train = MakeDemoData(data_cfg);
  data_cfg.sample_seed = DeriveSeed(config.seed, 2);
  const auto test = MakeDemoData(data_cfg);

  TrainConfig unconditioned = config;
  unconditioned.p_unknown = 1.0;
  DemoExperiment out;
  out.conditioned = Train(config, train, data_cfg.num_clusters, data_cfg.num_classes);
  out.unconditioned = Train(unconditioned, train, data_cfg.num_clusters, data_cfg.num_classes);
  out.accuracy_true_id = Evaluate(out.conditioned.model, test, EvalMode::kTrueId);
  out.accuracy_unknown_id = Evaluate(out.conditioned.model, test, EvalMode::kUnknownOnly);
  out.accuracy_unconditioned = Evaluate(out.unconditioned.model, test, EvalMode::kUnknownOnly);
  return out;
}

void WriteDemoClassifier(const DemoClassifier &model, std::ostream &out) {
  out << "demo-classifier 1\n";
  out << "classes " << model.num_classes << '\n';
  out << "feature_dim " << model.feature_dim << '\n';
  out << "clusters " << model.num_clusters << '\n';
  for (int c = 0; c < model.num_classes; ++c)
    WriteKeyedRow(out, "weights", model.weights.row(c).data(), model.InputDim());
  WriteKeyedRow(out, "bias", model.bias);
}

DemoClassifier ReadDemoClassifier(std::istream &in) {
  ExpectHeader(in, "demo-classifier", 1);
  const long long classes = ReadKeyedInt(in, "classes");
  const long long features = ReadKeyedInt(in, "feature_dim");
  const long long clusters = ReadKeyedInt(in, "clusters");
  if (classes < 1 || features < 0 || clusters < 1) throw DataError("demo classifier: bad shape");
  DemoClassifier m = ZeroClassifier(static_cast<int>(classes), static_cast<int>(features),
                                    static_cast<int>(clusters));
  for (long long c = 0; c < classes; ++c) {
    auto row = ReadKeyedRow(in, "weights");
    if (static_cast<long long>(row.size()) != m.InputDim())
      throw DataError("demo classifier: weight row of wrong length");
    for (int j = 0; j < m.InputDim(); ++j) m.weights(c, j) = row[j];
  }
  auto bias = ReadKeyedRow(in, "bias");
  if (static_cast<long long>(bias.size()) != classes) throw DataError("demo classifier: bad bias");
  for (long long c = 0; c < classes; ++c) m.bias(c) = bias[c];
  return m;
}

void WriteLossCurve(const std::vector<double> &curve, std::ostream &out) {
  for (std::size_t e = 0; e < curve.size(); ++e) out << e << ' ' << FormatReal(curve[e]) << '\n';
}

}  // namespace cohort
