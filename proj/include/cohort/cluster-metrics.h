// include/cohort/cluster-metrics.h

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

#ifndef COHORT_CLUSTER_METRICS_H_
#define COHORT_CLUSTER_METRICS_H_

#include <vector>

namespace cohort {

/// Adjusted Rand index of two labelings of the same items (Hubert-Arabie).
/// Labels are arbitrary nonnegative ints. Returns 1.0 when both partitions
/// are identical up to relabeling, including the all-one-cluster case.
double AdjustedRandIndex(const std::vector<int> &a, const std::vector<int> &b);

}  // namespace cohort

#endif  // COHORT_CLUSTER_METRICS_H_
