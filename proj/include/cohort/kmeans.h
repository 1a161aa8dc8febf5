// include/cohort/kmeans.h

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

#ifndef COHORT_KMEANS_H_
#define COHORT_KMEANS_H_

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "cohort/corpus.h"

namespace cohort {

inline constexpr int kDefaultNumClusters = 50;

/// Cluster index in [0, k]. The value k itself is the UNKNOWN cluster, the
/// last one-hot class.
struct ClusterId {
  int value = 0;

  static constexpr ClusterId Unknown(int k) { return ClusterId{k}; }
  constexpr bool IsUnknown(int k) const { return value == k; }
  friend constexpr auto operator<=>(const ClusterId &, const ClusterId &) = default;
};

struct KMeansOptions {
  int max_iter = 300;
  double tol = 1e-6;  // max centroid shift (Euclidean) that counts as converged
  int num_threads = 1;
};

struct KMeansModel {
  int k = 0;
  Matrix centroids;  // k x r
  double inertia = 0.0;
  int iterations = 0;
  std::uint64_t seed = 0;
  bool converged = false;
  // Hierarchical fits can stop early; requested_k is then the product of the
  // branching factors and k the number of leaves actually produced.
  int requested_k = 0;

  int Dim() const { return static_cast<int>(centroids.cols()); }

  /// Nearest centroid by squared Euclidean distance, ties to the lowest
  /// index. Never returns UNKNOWN.
  ClusterId Assign(const Vector &x) const;
};

struct KMeansFit {
  KMeansModel model;
  std::vector<int> assignments;        // per fit row, equals model.Assign(row)
  std::vector<double> inertia_history;  // after each assignment step, then final
};

/// Lloyd's algorithm with k-means++ seeding. Throws NumericError when
/// rows < k, DataError on non-finite data.
KMeansFit FitKMeans(const Matrix &data, int k, std::uint64_t seed,
                    const KMeansOptions &options = {});

/// Recursive K-means: level i re-clusters the member points of every level
/// i - 1 cluster into branching[i] groups. Leaves become the centroids of a
/// single flat model.
KMeansFit FitHierarchical(const Matrix &data, const std::vector<int> &branching,
                          std::uint64_t seed, const KMeansOptions &options = {});

/// Nearest-centroid labels for every row.
std::vector<int> AssignRows(const KMeansModel &model, const Matrix &data,
                            int num_threads = 1);

/// Sum of squared distances of rows to their assigned centroids.
double ComputeInertia(const KMeansModel &model, const Matrix &data,
                      const std::vector<int> &assignments);

struct WssPoint {
  int k;
  double wss;
};
using WssCurve = std::vector<WssPoint>;

/// Inertia of fit_kmeans for each k (seed derived from (seed, k)). When
/// wss(k_i) > wss(k_{i-1}) the fit is repeated once with an alternate
/// derived seed and the lower inertia kept.
WssCurve ComputeWssCurve(const Matrix &data, const std::vector<int> &k_values,
                         std::uint64_t seed, const KMeansOptions &options = {});

/// Greatest-curvature k: both axes normalized to [0, 1], pick the interior
/// point with the largest second difference of the wss sequence, ties to the
/// smaller k. Needs at least 3 points.
int SelectElbow(const WssCurve &curve);

// "kmeans-model 1" text format: k, dim, requested_k, seed, iterations,
// converged, inertia, then k "centroid" rows. Reals at 17 digits.
void WriteKMeansModel(const KMeansModel &model, std::ostream &out);
KMeansModel ReadKMeansModel(std::istream &in);
void SaveKMeansModel(const KMeansModel &model, const std::string &path);
KMeansModel LoadKMeansModel(const std::string &path);

/// "utt_id,cluster_id" CSV with header. cluster_id == k means UNKNOWN.
void WriteAssignments(const std::vector<std::string> &utt_ids,
                      const std::vector<ClusterId> &ids, std::ostream &out);
struct AssignmentTable {
  std::vector<std::string> utt_ids;
  std::vector<ClusterId> ids;
};
AssignmentTable ReadAssignments(const std::string &path);

}  // namespace cohort

#endif  // COHORT_KMEANS_H_
