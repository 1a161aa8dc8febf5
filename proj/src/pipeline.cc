// src/pipeline.cc

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

#include "cohort/pipeline.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cohort/conditioning.h"
#include "cohort/errors.h"
#include "cohort/fairness-eval.h"
#include "cohort/random.h"
#include "cohort/text-io.h"
#include "json.hpp"

namespace cohort {

using Json = nlohmann::ordered_json;

std::string ConfigToJson(const PipelineConfig &c) {
  Json j;
  j["embedding_dim"] = c.embedding_dim;
  if (c.pca_policy.kind == RankPolicy::Kind::kFixedRank)
    j["pca_rank"] = c.pca_policy.rank;
  else
    j["pca_variance"] = c.pca_policy.fraction;
  j["k"] = c.k;
  j["seed"] = c.seed;
  j["p_unknown"] = c.p_unknown;
  j["mode"] = c.mode == ClusterMode::kFlat ? "flat" : "hier";
  j["branching"] = c.branching;
  j["max_iter"] = c.max_iter;
  j["tol"] = c.tol;
  j["threads"] = c.threads;
  j["bootstrap_resamples"] = c.bootstrap_resamples;
  j["corpus"] = c.corpus;
  j["out_dir"] = c.out_dir;
  j["pca_model"] = c.pca_model;
  j["kmeans_model"] = c.kmeans_model;
  j["assignments"] = c.assignments;
  j["features"] = c.features;
  j["baseline"] = c.baseline;
  j["treatment"] = c.treatment;
  j["axes"] = c.axes;
  j["report"] = c.report;
  j["projection"] = c.projection;
  j["label_axis"] = c.label_axis;
  return j.dump(2);
}

PipelineConfig ConfigFromJson(const std::string &text, const PipelineConfig &base) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error &e) {
    throw UsageError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw UsageError("config must be a JSON object");

  PipelineConfig c = base;
  try {
    for (const auto &[key, value] : j.items()) {
      if (key == "embedding_dim") c.embedding_dim = value.get<int>();
      else if (key == "pca_rank") c.pca_policy = RankPolicy::FixedRank(value.get<int>());
      else if (key == "pca_variance") c.pca_policy = RankPolicy::VarianceFraction(value.get<double>());
      else if (key == "k") c.k = value.get<int>();
      else if (key == "seed") c.seed = value.get<std::uint64_t>();
      else if (key == "p_unknown") c.p_unknown = value.get<double>();
      else if (key == "mode") {
        const auto mode = value.get<std::string>();
        if (mode == "flat") c.mode = ClusterMode::kFlat;
        else if (mode == "hier") c.mode = ClusterMode::kHierarchical;
        else throw UsageError("config: mode must be 'flat' or 'hier'");
      }
      else if (key == "branching") c.branching = value.get<std::vector<int>>();
      else if (key == "max_iter") c.max_iter = value.get<int>();
      else if (key == "tol") c.tol = value.get<double>();
      else if (key == "threads") c.threads = value.get<int>();
      else if (key == "bootstrap_resamples") c.bootstrap_resamples = value.get<int>();
      else if (key == "corpus") c.corpus = value.get<std::string>();
      else if (key == "out_dir") c.out_dir = value.get<std::string>();
      else if (key == "pca_model") c.pca_model = value.get<std::string>();
      else if (key == "kmeans_model") c.kmeans_model = value.get<std::string>();
      else if (key == "assignments") c.assignments = value.get<std::string>();
      else if (key == "features") c.features = value.get<std::string>();
      else if (key == "baseline") c.baseline = value.get<std::string>();
      else if (key == "treatment") c.treatment = value.get<std::string>();
      else if (key == "axes") c.axes = value.get<std::vector<std::string>>();
      else if (key == "report") c.report = value.get<std::string>();
      else if (key == "projection") c.projection = value.get<std::string>();
      else if (key == "label_axis") c.label_axis = value.get<std::string>();
      else throw UsageError("config: unknown key '" + key + "'");
    }
  } catch (const Json::exception &e) {
    throw UsageError(std::string("config: ") + e.what());
  }
  return c;
}

PipelineConfig LoadConfig(const std::string &path, const PipelineConfig &base) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ConfigFromJson(ss.str(), base);
}

namespace {

std::string OutputPath(const PipelineConfig &config, const std::string &explicit_path,
                       const std::string &default_name) {
  if (!explicit_path.empty()) return explicit_path;
  return (std::filesystem::path(config.out_dir) / default_name).string();
}

void EnsureParent(const std::string &path) {
  auto parent = std::filesystem::path(path).parent_path();
  if (!parent.empty()) std::filesystem::create_directories(parent);
}

std::ofstream OpenOutput(const std::string &path) {
  EnsureParent(path);
  std::ofstream out(path);
  if (!out) throw DataError("cannot write '" + path + "'");
  return out;
}

// The corpus (with its metadata) lives only inside this function.
EmbeddingView LoadEmbeddingView(const PipelineConfig &config) {
  if (config.corpus.empty()) throw UsageError("no corpus given (--corpus)");
  return LoadCorpus(config.corpus, config.embedding_dim).Embeddings();
}

int ResolveK(const PipelineConfig &config) {
  if (!config.kmeans_model.empty()) return LoadKMeansModel(config.kmeans_model).k;
  if (config.k < 1) throw UsageError("k must be positive");
  return config.k;
}

}  // namespace

ClusterFitSummary RunClusterFit(const PipelineConfig &config) {
  const EmbeddingView view = LoadEmbeddingView(config);
  if (config.threads < 1) throw UsageError("threads must be positive");

  ClusterFitSummary summary;
  summary.num_records = static_cast<int>(view.utt_ids.size());
  const PcaModel pca = FitPca(view.embeddings, config.pca_policy);
  summary.pca_rank = pca.Rank();
  summary.variance_retained = pca.explained_variance_ratio.sum();
  const Matrix reduced = pca.TransformRows(view.embeddings);

  KMeansOptions options;
  options.max_iter = config.max_iter;
  options.tol = config.tol;
  options.num_threads = config.threads;
  KMeansFit fit;
  if (config.mode == ClusterMode::kFlat) {
    fit = FitKMeans(reduced, config.k, config.seed, options);
  } else {
    if (config.branching.empty()) throw UsageError("hierarchical mode needs --branching");
    fit = FitHierarchical(reduced, config.branching, config.seed, options);
  }
  summary.model = fit.model;

  summary.pca_path = OutputPath(config, "", "pca_model.txt");
  summary.kmeans_path = OutputPath(config, "", "kmeans_model.txt");
  summary.assignments_path = OutputPath(config, "", "assignments.csv");
  {
    auto out = OpenOutput(summary.pca_path);
    WritePcaModel(pca, out);
  }
  {
    auto out = OpenOutput(summary.kmeans_path);
    WriteKMeansModel(fit.model, out);
  }
  {
    auto out = OpenOutput(summary.assignments_path);
    std::vector<ClusterId> ids;
    ids.reserve(fit.assignments.size());
    for (int a : fit.assignments) ids.push_back(ClusterId{a});
    WriteAssignments(view.utt_ids, ids, out);
  }
  return summary;
}

std::string FormatClusterFitSummary(const ClusterFitSummary &s) {
  std::ostringstream out;
  out << "records " << s.num_records << '\n'
      << "pca_rank " << s.pca_rank << '\n'
      << "variance_retained " << FormatReal(s.variance_retained) << '\n'
      << "k " << s.model.k << '\n'
      << "inertia " << FormatReal(s.model.inertia) << '\n'
      << "iterations " << s.model.iterations << '\n'
      << "converged " << (s.model.converged ? "yes" : "no") << '\n';
  if (s.model.requested_k != s.model.k) out << "requested_k " << s.model.requested_k << '\n';
  return out.str();
}

std::string RunFeaturesEmit(const PipelineConfig &config, FeaturePhase phase) {
  const int k = ResolveK(config);
  std::vector<std::string> ids;
  std::vector<ConditioningFeature> features;

  if (phase == FeaturePhase::kTrain) {
    if (config.assignments.empty()) throw UsageError("train features need --assignments");
    AssignmentTable table = ReadAssignments(config.assignments);
    for (std::size_t i = 0; i < table.ids.size(); ++i)
      if (table.ids[i].value >= k)
        throw DataError("assignment for '" + table.utt_ids[i] + "' is not a cluster below k = " +
                        std::to_string(k));
    MaskingPolicy policy{config.p_unknown, config.seed};
    for (const ClusterId &id : ApplyMasking(table.ids, k, policy)) features.push_back(OneHot(id, k));
    ids = std::move(table.utt_ids);
  } else {
    if (config.corpus.empty()) throw UsageError("inference features need --corpus");
    ids = ReadUtteranceIds(config.corpus);
    features.assign(ids.size(), InferenceFeature(k));
  }

  const std::string path = OutputPath(
      config, config.features,
      phase == FeaturePhase::kTrain ? "features_train.csv" : "features_inference.csv");
  auto out = OpenOutput(path);
  WriteFeatureHeader(out, k);
  for (std::size_t i = 0; i < ids.size(); ++i) WriteFeatureRow(out, ids[i], features[i]);
  return path;
}

std::string RunEvalReport(const PipelineConfig &config) {
  if (config.baseline.empty() || config.treatment.empty())
    throw UsageError("eval report needs --baseline and --treatment");
  if (config.axes.empty()) throw UsageError("eval report needs --axes");
  const auto baseline = LoadHypotheses(config.baseline);
  const auto treatment = LoadHypotheses(config.treatment);
  const GroupReport report = BuildGroupReport(baseline, treatment, config.axes);

  const std::string path = OutputPath(config, config.report, "report.csv");
  {
    auto out = OpenOutput(path);
    WriteGroupReport(report, out);
  }

  std::filesystem::path boot_path(path);
  boot_path.replace_filename(boot_path.stem().string() + "_bootstrap.csv");
  auto out = OpenOutput(boot_path.string());
  out << "axis,label,delta_wer,ci_low,ci_high,p_value\n";
  auto emit = [&](const std::string &axis, const std::string &label,
                  const std::vector<EvalUtterance> &b, const std::vector<EvalUtterance> &t,
                  std::uint64_t index) {
    BootstrapOptions options;
    options.resamples = config.bootstrap_resamples;
    options.seed = DeriveSeed(config.seed, index);
    options.num_threads = config.threads;
    BootstrapResult r = PairedBootstrap(b, t, options);
    char buf[160];
    std::snprintf(buf, sizeof(buf), "%.4f,%.4f,%.4f,%.4f", 100.0 * r.delta, 100.0 * r.ci_low,
                  100.0 * r.ci_high, r.p_value);
    out << axis << ',' << label << ',' << buf << '\n';
  };
  emit("all", "all", baseline, treatment, 0);
  for (std::size_t row = 0; row < report.rows.size(); ++row) {
    const GroupRow &g = report.rows[row];
    std::vector<EvalUtterance> b, t;
    auto has_label = [&](const EvalUtterance &u) {
      auto it = u.groups.find(g.axis);
      return it != u.groups.end() && it->second == g.label;
    };
    for (const auto &u : baseline)
      if (has_label(u)) b.push_back(u);
    for (const auto &u : treatment)
      if (has_label(u)) t.push_back(u);
    emit(g.axis, g.label, b, t, row + 1);
  }
  return path;
}

std::string RunVizProject(const PipelineConfig &config) {
  if (config.corpus.empty()) throw UsageError("viz project needs --corpus");
  const Corpus corpus = LoadCorpus(config.corpus, config.embedding_dim);

  std::vector<std::string> labels;
  if (!config.label_axis.empty()) {
    bool found = false;
    for (const auto &r : corpus.Records()) {
      auto it = r.meta.find(config.label_axis);
      labels.push_back(it == r.meta.end() ? "" : it->second);
      found = found || it != r.meta.end();
    }
    if (!found) throw UsageError("no record carries label axis '" + config.label_axis + "'");
  }

  // Everything numeric below sees only the embedding view.
  const EmbeddingView view = corpus.Embeddings();
  PcaModel pca = config.pca_model.empty()
                     ? FitPca(view.embeddings, RankPolicy::FixedRank(2))
                     : LoadPcaModel(config.pca_model);
  if (pca.Rank() < 2) throw UsageError("projection needs a PCA model of rank >= 2");
  if (pca.Dim() != config.embedding_dim) throw DataError("pca model dimension does not match corpus");
  const Matrix reduced = pca.TransformRows(view.embeddings);

  std::vector<std::string> cluster(view.utt_ids.size());
  if (!config.assignments.empty()) {
    AssignmentTable table = ReadAssignments(config.assignments);
    std::map<std::string, int> by_id;
    for (std::size_t i = 0; i < table.ids.size(); ++i) by_id[table.utt_ids[i]] = table.ids[i].value;
    for (std::size_t i = 0; i < view.utt_ids.size(); ++i) {
      auto it = by_id.find(view.utt_ids[i]);
      if (it == by_id.end()) throw DataError("no assignment for '" + view.utt_ids[i] + "'");
      cluster[i] = std::to_string(it->second);
    }
  } else if (!config.kmeans_model.empty()) {
    if (config.pca_model.empty())
      throw UsageError("--kmeans-model needs the --pca-model it was fitted with");
    const KMeansModel km = LoadKMeansModel(config.kmeans_model);
    if (km.Dim() != pca.Rank()) throw DataError("kmeans model dimension does not match pca rank");
    std::vector<int> a = AssignRows(km, reduced, config.threads);
    for (std::size_t i = 0; i < a.size(); ++i) cluster[i] = std::to_string(a[i]);
  }

  const std::string path = OutputPath(config, config.projection, "projection.csv");
  auto out = OpenOutput(path);
  out << "utt_id,pc1,pc2,cluster_id";
  if (!labels.empty()) out << ',' << config.label_axis;
  out << '\n';
  for (std::size_t i = 0; i < view.utt_ids.size(); ++i) {
    const auto row = static_cast<Eigen::Index>(i);
    out << view.utt_ids[i] << ',' << FormatReal(reduced(row, 0)) << ','
        << FormatReal(reduced(row, 1)) << ',' << cluster[i];
    if (!labels.empty()) out << ',' << labels[i];
    out << '\n';
  }
  return path;
}

void RunSynthGenerate(const SynthParams &p) {
  if (p.out.empty()) throw UsageError("synth generate needs --out");
  SyntheticCorpus synth = SynthCorpus(p.clusters, p.per_cluster, p.dim, p.separation, p.noise, p.seed);
  auto out = OpenOutput(p.out);
  WriteCorpus(synth.corpus, out);
}

}  // namespace cohort
