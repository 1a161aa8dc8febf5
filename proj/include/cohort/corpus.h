// include/cohort/corpus.h

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

#ifndef COHORT_CORPUS_H_
#define COHORT_CORPUS_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace cohort {

/// Row-major dense matrix; one data point per row.
using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;

inline constexpr int kDefaultEmbeddingDim = 192;
inline constexpr double kDefaultChunkSeconds = 10.0;

/// Label axis under which synth_corpus records generator truth.
inline constexpr const char *kSyntheticTruthAxis = "synthetic_truth";

using MetaMap = std::map<std::string, std::string>;

/// One embedded utterance (or segment). `meta` holds evaluation-only labels
/// and is never visible to the clustering or conditioning code, which only
/// ever receives an EmbeddingView.
struct UtteranceRecord {
  std::string utt_id;
  std::vector<double> embedding;
  std::optional<double> duration_s;
  MetaMap meta;
};

/// Metadata-free view of a corpus: ids plus an n x D embedding matrix.
struct EmbeddingView {
  std::vector<std::string> utt_ids;
  Matrix embeddings;
};

class Corpus {
 public:
  Corpus() = default;
  /// Validates dimension, finiteness and id uniqueness; throws DataError.
  Corpus(int dim, std::vector<UtteranceRecord> records);

  int Dim() const { return dim_; }
  std::size_t Size() const { return records_.size(); }
  const std::vector<UtteranceRecord> &Records() const { return records_; }

  /// Embeddings and ids only, in record order.
  EmbeddingView Embeddings() const;

 private:
  int dim_ = 0;
  std::vector<UtteranceRecord> records_;
};

struct SegmentWindow {
  double start_s;
  double end_s;
};

/// Splits [0, duration_s) into chunk_s windows. A trailing remainder of at
/// least one second becomes its own window; a shorter one is merged into the
/// previous window (or is the sole window when duration_s < 1).
std::vector<SegmentWindow> SegmentPlan(double duration_s,
                                       double chunk_s = kDefaultChunkSeconds);

/// Reads a line-delimited JSON corpus. Errors (DataError) carry the line
/// number or the offending utt_id.
Corpus LoadCorpus(const std::string &path, int expected_dim);
Corpus ParseCorpus(std::istream &in, int expected_dim);

/// Writes one JSON object per line; doubles use shortest round-trip form.
void WriteCorpus(const Corpus &corpus, std::ostream &out);
void SaveCorpus(const Corpus &corpus, const std::string &path);

/// Reads only the `utt_id` key of each line of a corpus file. Used by paths
/// that must not touch embeddings.
std::vector<std::string> ReadUtteranceIds(const std::string &path);

struct SyntheticCorpus {
  Corpus corpus;
  std::map<std::string, int> ground_truth;  // utt_id -> generator cluster
};

/// Isotropic Gaussian blobs. Centers are rejection-sampled so every pair is
/// at least `separation` apart; record i belongs to cluster i % n_clusters.
/// Truth labels are also written into meta under kSyntheticTruthAxis.
SyntheticCorpus SynthCorpus(int n_clusters, int per_cluster, int dim,
                            double separation, double noise_sigma,
                            std::uint64_t seed);

}  // namespace cohort

#endif  // COHORT_CORPUS_H_
