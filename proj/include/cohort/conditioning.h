// include/cohort/conditioning.h

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

#ifndef COHORT_CONDITIONING_H_
#define COHORT_CONDITIONING_H_

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "cohort/kmeans.h"

namespace cohort {

inline constexpr double kDefaultUnknownProbability = 0.1;

/// Replace a training example's cluster with UNKNOWN with probability
/// p_unknown.
struct MaskingPolicy {
  double p_unknown = kDefaultUnknownProbability;
  std::uint64_t seed = 0;
};

/// One-hot of length k + 1. Index k is UNKNOWN.
struct ConditioningFeature {
  std::vector<double> onehot;

  int NumClusters() const { return static_cast<int>(onehot.size()) - 1; }
  /// Position of the 1 entry.
  ClusterId ArgMax() const;
};

/// Element i becomes UNKNOWN iff CounterUniform(seed, i) < p_unknown, so a
/// decision depends only on (seed, i, p_unknown). Throws
/// std::invalid_argument when an input is not in [0, k) or p is outside
/// [0, 1].
std::vector<ClusterId> ApplyMasking(std::span<const ClusterId> assignments, int k,
                                    const MaskingPolicy &policy);

ConditioningFeature OneHot(ClusterId id, int k);

/// Feature used for every utterance at decode time. Takes only k: decoding
/// never searches for a cluster.
ConditioningFeature InferenceFeature(int k);

/// Header "utt_id,k=<k>", then per record the utt_id and k + 1 comma
/// separated 0/1 values.
void WriteFeatureHeader(std::ostream &out, int k);
void WriteFeatureRow(std::ostream &out, const std::string &utt_id,
                     const ConditioningFeature &feature);

}  // namespace cohort

#endif  // COHORT_CONDITIONING_H_
