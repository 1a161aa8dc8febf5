// include/cohort/pca.h

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

#ifndef COHORT_PCA_H_
#define COHORT_PCA_H_

#include <iosfwd>
#include <string>

#include "cohort/corpus.h"

namespace cohort {

/// How many principal directions to keep.
struct RankPolicy {
  enum class Kind { kFixedRank, kVarianceFraction };
  Kind kind = Kind::kVarianceFraction;
  int rank = 0;             // used by kFixedRank
  double fraction = 0.90;   // used by kVarianceFraction, in (0, 1]

  static RankPolicy FixedRank(int r) { return {Kind::kFixedRank, r, 0.0}; }
  static RankPolicy VarianceFraction(double f) {
    return {Kind::kVarianceFraction, 0, f};
  }
};

/// Principal component model. `components` is r x D with orthonormal rows
/// ordered by descending explained variance; each row is sign-normalized so
/// its largest-magnitude entry is positive.
struct PcaModel {
  Vector mean;
  Matrix components;
  Vector explained_variance;
  Vector explained_variance_ratio;

  int Dim() const { return static_cast<int>(mean.size()); }
  int Rank() const { return static_cast<int>(components.rows()); }

  /// components * (x - mean).
  Vector Transform(const Vector &x) const;
  /// Row-wise Transform of an n x D matrix, giving n x r.
  Matrix TransformRows(const Matrix &x) const;
  /// mean + components^T * y.
  Vector InverseTransform(const Vector &y) const;
};

/// Fits on the rows of `data` using the sample covariance (divisor n - 1).
/// Throws NumericError for n < 2 or zero total variance, and
/// std::invalid_argument for a rank outside [1, min(n - 1, D)].
PcaModel FitPca(const Matrix &data, const RankPolicy &policy);

// Text format (one key per line, values space separated, %.17g):
//   pca-model 1
//   dim D
//   rank r
//   mean m_1 ... m_D
//   component c_1 ... c_D          (r lines)
//   explained_variance v_1 ... v_r
//   explained_variance_ratio q_1 ... q_r
void WritePcaModel(const PcaModel &model, std::ostream &out);
PcaModel ReadPcaModel(std::istream &in);
void SavePcaModel(const PcaModel &model, const std::string &path);
PcaModel LoadPcaModel(const std::string &path);

}  // namespace cohort

#endif  // COHORT_PCA_H_
