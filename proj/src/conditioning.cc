// src/conditioning.cc

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

#include "cohort/conditioning.h"

#include <ostream>
#include <stdexcept>

#include "cohort/random.h"

namespace cohort {

ClusterId ConditioningFeature::ArgMax() const {
  for (std::size_t i = 0; i < onehot.size(); ++i)
    if (onehot[i] == 1.0) return ClusterId{static_cast<int>(i)};
  throw std::logic_error("conditioning feature has no active entry");
}

std::vector<ClusterId> ApplyMasking(std::span<const ClusterId> assignments, int k,
                                    const MaskingPolicy &policy) {
  if (k < 1) throw std::invalid_argument("masking: k must be positive");
  if (!(policy.p_unknown >= 0.0 && policy.p_unknown <= 1.0))
    throw std::invalid_argument("masking: p_unknown must be in [0, 1]");
  std::vector<ClusterId> out;
  out.reserve(assignments.size());
  for (std::size_t i = 0; i < assignments.size(); ++i) {
    const ClusterId id = assignments[i];
    if (id.value < 0 || id.value >= k)
      throw std::invalid_argument("masking: element " + std::to_string(i) +
                                  " is not a cluster in [0, " + std::to_string(k) +
                                  ") (already masked?)");
    const bool masked = CounterUniform(policy.seed, i) < policy.p_unknown;
    out.push_back(masked ? ClusterId::Unknown(k) : id);
  }
  return out;
}

ConditioningFeature OneHot(ClusterId id, int k) {
  if (k < 1) throw std::invalid_argument("one_hot: k must be positive");
  if (id.value < 0 || id.value > k)
    throw std::invalid_argument("one_hot: cluster " + std::to_string(id.value) +
                                " outside [0, " + std::to_string(k) + "]");
  ConditioningFeature f;
  f.onehot.assign(static_cast<std::size_t>(k) + 1, 0.0);
  f.onehot[id.value] = 1.0;
  return f;
}

ConditioningFeature InferenceFeature(int k) { return OneHot(ClusterId::Unknown(k), k); }

void WriteFeatureHeader(std::ostream &out, int k) { out << "utt_id,k=" << k << '\n'; }

void WriteFeatureRow(std::ostream &out, const std::string &utt_id,
                     const ConditioningFeature &feature) {
  out << utt_id;
  for (double v : feature.onehot) out << (v == 1.0 ? ",1" : ",0");
  out << '\n';
}

}  // namespace cohort
