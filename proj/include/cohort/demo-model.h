// include/cohort/demo-model.h

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

#ifndef COHORT_DEMO_MODEL_H_
#define COHORT_DEMO_MODEL_H_

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "cohort/conditioning.h"
#include "cohort/corpus.h"

namespace cohort {

// A linear softmax classifier standing in for a cluster-conditioned encoder.
// The input is concat(features, cluster one-hot), so the one-hot enters the
// model exactly where the acoustic features do.

struct DemoClassifier {
  Matrix weights;  // C x (F + k + 1)
  Vector bias;     // C
  int num_classes = 0;
  int feature_dim = 0;
  int num_clusters = 0;

  int InputDim() const { return feature_dim + num_clusters + 1; }
};

/// All-zero parameters.
DemoClassifier ZeroClassifier(int num_classes, int feature_dim, int num_clusters);
/// Small seeded Gaussian weights (sigma 0.01), zero bias.
DemoClassifier InitClassifier(int num_classes, int feature_dim, int num_clusters,
                              std::uint64_t seed);

/// softmax(W * concat(x, cond) + b).
Vector Forward(const DemoClassifier &model, const Vector &x, const ConditioningFeature &cond);

struct LabeledInput {
  Vector x;
  ConditioningFeature cond;
  int label = 0;
};

struct LossAndGrad {
  double loss = 0.0;  // mean cross-entropy
  Matrix grad_weights;
  Vector grad_bias;
};

/// Exact gradient of the mean cross-entropy over a nonempty batch.
LossAndGrad ComputeLossAndGrad(const DemoClassifier &model, std::span<const LabeledInput> batch);

/// Training/evaluation example with its true cluster.
struct DemoExample {
  Vector x;
  ClusterId cluster;
  int label = 0;
};

struct TrainConfig {
  double learning_rate = 0.5;
  int epochs = 500;
  std::uint64_t seed = 0;
  double p_unknown = kDefaultUnknownProbability;
};

struct TrainResult {
  DemoClassifier model;
  std::vector<double> loss_curve;  // loss before each update
};

/// Full-batch gradient descent from InitClassifier(DeriveSeed(seed, 0)).
/// Each epoch re-masks cluster ids with seed DeriveSeed(seed, epoch + 1).
TrainResult Train(const TrainConfig &config, std::span<const DemoExample> data, int num_clusters,
                  int num_classes);

enum class EvalMode { kTrueId, kUnknownOnly };

/// Argmax accuracy (ties to the lowest class). kTrueId feeds each example's
/// own cluster; kUnknownOnly feeds InferenceFeature(k) to every example.
double Evaluate(const DemoClassifier &model, std::span<const DemoExample> data, EvalMode mode);

struct DemoDataConfig {
  int num_clusters = 4;
  int num_classes = 4;
  int feature_dim = 6;
  int num_examples = 2000;
  double prototype_scale = 1.0;
  double noise_sigma = 1.0;
  double cluster_shift = 0.0;
  double preferred_label_prob = 0.7;
  std::uint64_t task_seed = 0;    // prototypes and cluster shifts
  std::uint64_t sample_seed = 0;  // per-example draws
};

/// Cluster-dependent task: cluster c prefers label c % C with probability
/// preferred_label_prob (remaining mass uniform), and features are
/// prototype[label] + shift[cluster] + noise. The cluster therefore carries
/// information about the label that the features alone do not.
std::vector<DemoExample> MakeDemoData(const DemoDataConfig &config);

// "demo-classifier 1" text format: classes, feature_dim, clusters, then C
// "weights" rows and one "bias" row.
/// Train/test split of one task plus a conditioned model (true IDs, masked
/// with p_unknown) and an unconditioned one (every ID masked), both scored on
/// the held-out split. This is what `cohort demo run` executes.
struct DemoExperiment {
  TrainResult conditioned;
  TrainResult unconditioned;
  double accuracy_true_id = 0.0;
  double accuracy_unknown_id = 0.0;
  double accuracy_unconditioned = 0.0;
};

DemoExperiment RunDemoExperiment(const TrainConfig &config,
                                 const DemoDataConfig &task = {});

void WriteDemoClassifier(const DemoClassifier &model, std::ostream &out);
DemoClassifier ReadDemoClassifier(std::istream &in);
/// "epoch loss" per line.
void WriteLossCurve(const std::vector<double> &curve, std::ostream &out);

}  // namespace cohort

#endif  // COHORT_DEMO_MODEL_H_
