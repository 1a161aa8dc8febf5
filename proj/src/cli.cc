// src/cli.cc

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

#include "cohort/cli.h"

#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <list>
#include <memory>

#include "CLI11.hpp"
#include "cohort/demo-model.h"
#include "cohort/errors.h"
#include "cohort/pipeline.h"
#include "cohort/random.h"

namespace cohort {

namespace {

// Collects the flags of one subcommand into a scratch config and, after
// parsing, copies only the flags the user actually passed over whatever the
// --config file provided.
class FlagBinder {
 public:
  template <typename T>
  CLI::Option *Bind(CLI::App *app, const std::string &name, T PipelineConfig::*field,
                    const std::string &help) {
    CLI::Option *opt = app->add_option(name, flags_.*field, help);
    binds_.emplace_back(opt, [this, field](PipelineConfig &c) { c.*field = flags_.*field; });
    return opt;
  }

  void BindClustering(CLI::App *app) {
    Bind(app, "--k", &PipelineConfig::k, "number of clusters (default 50)");
    Bind(app, "--seed", &PipelineConfig::seed, "random seed");
    Bind(app, "--dim", &PipelineConfig::embedding_dim, "embedding dimension (default 192)");
    Bind(app, "--max-iter", &PipelineConfig::max_iter, "Lloyd iteration cap");
    Bind(app, "--tol", &PipelineConfig::tol, "centroid-shift convergence tolerance");
    Bind(app, "--threads", &PipelineConfig::threads, "worker threads");
    Bind(app, "--branching", &PipelineConfig::branching, "hierarchical branching, e.g. 5,10")
        ->delimiter(',');
    CLI::Option *var = app->add_option("--pca-variance", pca_variance_,
                                       "keep the smallest rank reaching this variance fraction");
    CLI::Option *rank = app->add_option("--pca-rank", pca_rank_, "fixed PCA rank");
    var->excludes(rank);
    binds_.emplace_back(var, [this](PipelineConfig &c) {
      c.pca_policy = RankPolicy::VarianceFraction(pca_variance_);
    });
    binds_.emplace_back(rank, [this](PipelineConfig &c) { c.pca_policy = RankPolicy::FixedRank(pca_rank_); });
    CLI::Option *mode = app->add_option("--mode", mode_, "flat | hier")
                            ->check(CLI::IsMember({"flat", "hier"}));
    binds_.emplace_back(mode, [this](PipelineConfig &c) {
      c.mode = mode_ == "hier" ? ClusterMode::kHierarchical : ClusterMode::kFlat;
    });
  }

  PipelineConfig Resolve(const std::string &config_path) const {
    PipelineConfig c = config_path.empty() ? PipelineConfig{} : LoadConfig(config_path);
    for (const auto &[opt, apply] : binds_)
      if (opt->count() > 0) apply(c);
    return c;
  }

 private:
  PipelineConfig flags_;
  double pca_variance_ = 0.9;
  int pca_rank_ = 0;
  std::string mode_ = "flat";
  std::vector<std::pair<CLI::Option *, std::function<void(PipelineConfig &)>>> binds_;
};

struct DemoParams {
  std::uint64_t seed = 0;
  int epochs = 500;
  double learning_rate = 0.5;
  double p_unknown = 0.1;
  std::string out_dir = ".";
};

void RunDemo(const DemoParams &p) {
  const DemoExperiment exp =
      RunDemoExperiment(TrainConfig{p.learning_rate, p.epochs, p.seed, p.p_unknown});
  std::filesystem::create_directories(p.out_dir);
  const auto dir = std::filesystem::path(p.out_dir);
  {
    std::ofstream out(dir / "demo_model.txt");
    if (!out) throw DataError("cannot write into '" + p.out_dir + "'");
    WriteDemoClassifier(exp.conditioned.model, out);
  }
  {
    std::ofstream out(dir / "loss_curve.txt");
    WriteLossCurve(exp.conditioned.loss_curve, out);
  }
  std::cout << "accuracy_true_id " << exp.accuracy_true_id << '\n'
            << "accuracy_unknown_id " << exp.accuracy_unknown_id << '\n'
            << "accuracy_unconditioned " << exp.accuracy_unconditioned << '\n';
}

}  // namespace

int CliMain(int argc, const char *const *argv) {
  CLI::App app{"Acoustic cohort clustering, conditioning features and fairness reports"};
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path, "JSON config; flags override its values");

  std::list<FlagBinder> binders;
  std::function<void()> action;

  // cluster fit
  CLI::App *cluster = app.add_subcommand("cluster", "clustering commands")->require_subcommand(1);
  CLI::App *fit = cluster->add_subcommand("fit", "fit PCA + K-means and write assignments");
  FlagBinder &fit_flags = binders.emplace_back();
  fit_flags.Bind(fit, "--corpus", &PipelineConfig::corpus, "embedding corpus (JSONL)");
  fit_flags.Bind(fit, "--out-dir", &PipelineConfig::out_dir, "output directory");
  fit_flags.BindClustering(fit);
  fit->callback([&] {
    action = [&] {
      ClusterFitSummary s = RunClusterFit(fit_flags.Resolve(config_path));
      std::cout << FormatClusterFitSummary(s);
    };
  });

  // features emit
  CLI::App *features = app.add_subcommand("features", "conditioning features")->require_subcommand(1);
  CLI::App *emit = features->add_subcommand("emit", "write one-hot conditioning features");
  FlagBinder &emit_flags = binders.emplace_back();
  std::string phase;
  emit->add_option("phase", phase, "train | inference")
      ->required()
      ->check(CLI::IsMember({"train", "inference"}));
  emit_flags.Bind(emit, "--assignments", &PipelineConfig::assignments, "assignments CSV (train)");
  emit_flags.Bind(emit, "--corpus", &PipelineConfig::corpus, "corpus whose ids to emit (inference)");
  emit_flags.Bind(emit, "--kmeans-model", &PipelineConfig::kmeans_model, "model providing k");
  emit_flags.Bind(emit, "--k", &PipelineConfig::k, "number of clusters if no model is given");
  emit_flags.Bind(emit, "--p-unknown", &PipelineConfig::p_unknown, "masking probability (train)");
  emit_flags.Bind(emit, "--seed", &PipelineConfig::seed, "masking seed");
  emit_flags.Bind(emit, "--out", &PipelineConfig::features, "output feature file");
  emit_flags.Bind(emit, "--out-dir", &PipelineConfig::out_dir, "output directory");
  emit->callback([&] {
    action = [&] {
      std::cout << RunFeaturesEmit(emit_flags.Resolve(config_path),
                                   phase == "train" ? FeaturePhase::kTrain : FeaturePhase::kInference)
                << '\n';
    };
  });

  // eval report
  CLI::App *eval = app.add_subcommand("eval", "fairness evaluation")->require_subcommand(1);
  CLI::App *report = eval->add_subcommand("report", "per-group WER report with bootstrap");
  FlagBinder &report_flags = binders.emplace_back();
  report_flags.Bind(report, "--baseline", &PipelineConfig::baseline, "baseline hypotheses (JSONL)");
  report_flags.Bind(report, "--treatment", &PipelineConfig::treatment, "cluster-based hypotheses (JSONL)");
  report_flags.Bind(report, "--axes", &PipelineConfig::axes, "group axes, e.g. gender,age")->delimiter(',');
  report_flags.Bind(report, "--out", &PipelineConfig::report, "report CSV");
  report_flags.Bind(report, "--out-dir", &PipelineConfig::out_dir, "output directory");
  report_flags.Bind(report, "--seed", &PipelineConfig::seed, "bootstrap seed");
  report_flags.Bind(report, "--resamples", &PipelineConfig::bootstrap_resamples, "bootstrap resamples");
  report_flags.Bind(report, "--threads", &PipelineConfig::threads, "worker threads");
  report->callback([&] {
    action = [&] { std::cout << RunEvalReport(report_flags.Resolve(config_path)) << '\n'; };
  });

  // viz project
  CLI::App *viz = app.add_subcommand("viz", "visualization exports")->require_subcommand(1);
  CLI::App *project = viz->add_subcommand("project", "2-D projection CSV for plotting");
  FlagBinder &viz_flags = binders.emplace_back();
  viz_flags.Bind(project, "--corpus", &PipelineConfig::corpus, "embedding corpus (JSONL)");
  viz_flags.Bind(project, "--pca-model", &PipelineConfig::pca_model, "fitted PCA model");
  viz_flags.Bind(project, "--kmeans-model", &PipelineConfig::kmeans_model, "fitted K-means model");
  viz_flags.Bind(project, "--assignments", &PipelineConfig::assignments, "assignments CSV");
  viz_flags.Bind(project, "--label-axis", &PipelineConfig::label_axis, "metadata axis for coloring");
  viz_flags.Bind(project, "--dim", &PipelineConfig::embedding_dim, "embedding dimension");
  viz_flags.Bind(project, "--out", &PipelineConfig::projection, "projection CSV");
  viz_flags.Bind(project, "--out-dir", &PipelineConfig::out_dir, "output directory");
  project->callback([&] {
    action = [&] { std::cout << RunVizProject(viz_flags.Resolve(config_path)) << '\n'; };
  });

  // synth generate
  CLI::App *synth = app.add_subcommand("synth", "synthetic data")->require_subcommand(1);
  CLI::App *generate = synth->add_subcommand("generate", "Gaussian-blob embedding corpus");
  SynthParams synth_params;
  generate->add_option("--clusters", synth_params.clusters, "number of blobs");
  generate->add_option("--per-cluster", synth_params.per_cluster, "points per blob");
  generate->add_option("--dim", synth_params.dim, "embedding dimension");
  generate->add_option("--separation", synth_params.separation, "minimum center distance");
  generate->add_option("--noise", synth_params.noise, "per-coordinate noise sigma");
  generate->add_option("--seed", synth_params.seed, "random seed");
  generate->add_option("--out", synth_params.out, "output corpus (JSONL)")->required();
  generate->callback([&] { action = [&] { RunSynthGenerate(synth_params); }; });

  // demo run
  CLI::App *demo = app.add_subcommand("demo", "conditioned toy classifier")->require_subcommand(1);
  CLI::App *run = demo->add_subcommand("run", "train with and without conditioning, report accuracy");
  DemoParams demo_params;
  run->add_option("--seed", demo_params.seed, "random seed");
  run->add_option("--epochs", demo_params.epochs, "gradient steps");
  run->add_option("--lr", demo_params.learning_rate, "learning rate");
  run->add_option("--p-unknown", demo_params.p_unknown, "masking probability");
  run->add_option("--out-dir", demo_params.out_dir, "output directory");
  run->callback([&] { action = [&] { RunDemo(demo_params); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (action) action();
    return 0;
  } catch (const UsageError &e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 1;
  } catch (const std::invalid_argument &e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 1;
  } catch (const DataError &e) {
    std::cerr << "data error: " << e.what() << '\n';
    return 2;
  } catch (const std::filesystem::filesystem_error &e) {
    std::cerr << "data error: " << e.what() << '\n';
    return 2;
  } catch (const NumericError &e) {
    std::cerr << "numeric error: " << e.what() << '\n';
    return 3;
  }
}

int CliMain(const std::vector<std::string> &args) {
  std::vector<const char *> argv{"cohort"};
  for (const std::string &a : args) argv.push_back(a.c_str());
  return CliMain(static_cast<int>(argv.size()), argv.data());
}

}  // namespace cohort
