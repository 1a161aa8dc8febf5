// include/cohort/pipeline.h

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

#ifndef COHORT_PIPELINE_H_
#define COHORT_PIPELINE_H_

#include <cstdint>
#include <string>
#include <vector>

#include "cohort/corpus.h"
#include "cohort/kmeans.h"
#include "cohort/pca.h"

namespace cohort {

enum class ClusterMode { kFlat, kHierarchical };
enum class FeaturePhase { kTrain, kInference };

/// Everything a pipeline command reads. Serialized as a flat JSON object
/// whose keys match the field names.
struct PipelineConfig {
  int embedding_dim = kDefaultEmbeddingDim;
  RankPolicy pca_policy = RankPolicy::VarianceFraction(0.90);
  int k = kDefaultNumClusters;
  std::uint64_t seed = 0;
  double p_unknown = 0.1;
  ClusterMode mode = ClusterMode::kFlat;
  std::vector<int> branching;
  int max_iter = 300;
  double tol = 1e-6;
  int threads = 1;
  int bootstrap_resamples = 1000;

  std::string corpus;
  std::string out_dir = ".";
  std::string pca_model;     // input for viz project
  std::string kmeans_model;  // input for features emit / viz project
  std::string assignments;   // input for features emit / viz project
  std::string features;      // output of features emit
  std::string baseline;
  std::string treatment;
  std::vector<std::string> axes;
  std::string report;        // output of eval report
  std::string projection;    // output of viz project
  std::string label_axis;
};

std::string ConfigToJson(const PipelineConfig &config);
/// Keys absent from the JSON keep their value in `base`. Unknown keys and
/// ill-typed values raise UsageError.
PipelineConfig ConfigFromJson(const std::string &json, const PipelineConfig &base = {});
PipelineConfig LoadConfig(const std::string &path, const PipelineConfig &base = {});

struct ClusterFitSummary {
  int num_records = 0;
  int pca_rank = 0;
  double variance_retained = 0.0;
  KMeansModel model;
  std::string pca_path;
  std::string kmeans_path;
  std::string assignments_path;
};

/// corpus -> PCA -> K-means. Writes pca_model.txt, kmeans_model.txt and
/// assignments.csv into out_dir. Only the metadata-free embedding view of
/// the corpus is used.
ClusterFitSummary RunClusterFit(const PipelineConfig &config);
std::string FormatClusterFitSummary(const ClusterFitSummary &summary);

/// Train phase: masked one-hots from config.assignments. Inference phase:
/// the constant UNKNOWN one-hot for every utt_id in config.corpus, reading
/// nothing but the ids. k comes from config.kmeans_model when set, else
/// config.k. Returns the output path.
std::string RunFeaturesEmit(const PipelineConfig &config, FeaturePhase phase);

/// Group report plus per-row paired bootstrap summary. Returns the report
/// path; the bootstrap table goes next to it with a "_bootstrap" suffix.
std::string RunEvalReport(const PipelineConfig &config);

/// Per record: utt_id, first two principal coordinates, cluster_id and
/// optionally the label_axis metadata value (display only). Uses
/// config.pca_model when set, otherwise fits a rank-2 PCA.
std::string RunVizProject(const PipelineConfig &config);

struct SynthParams {
  int clusters = 3;
  int per_cluster = 100;
  int dim = kDefaultEmbeddingDim;
  double separation = 20.0;
  double noise = 1.0;
  std::uint64_t seed = 0;
  std::string out;
};
void RunSynthGenerate(const SynthParams &params);

}  // namespace cohort

#endif  // COHORT_PIPELINE_H_
