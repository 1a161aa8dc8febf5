// src/cluster-metrics.cc

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

#include "cohort/cluster-metrics.h"

#include <map>
#include <stdexcept>
#include <utility>

namespace cohort {

namespace {
double Choose2(double n) { return n * (n - 1.0) / 2.0; }
}  // namespace

double AdjustedRandIndex(const std::vector<int> &a, const std::vector<int> &b) {
  if (a.size() != b.size()) throw std::invalid_argument("ari: labelings differ in length");
  if (a.empty()) throw std::invalid_argument("ari: empty labelings");

  std::map<std::pair<int, int>, double> joint;
  std::map<int, double> rows, cols;
  for (std::size_t i = 0; i < a.size(); ++i) {
    joint[{a[i], b[i]}] += 1.0;
    rows[a[i]] += 1.0;
    cols[b[i]] += 1.0;
  }
  double index = 0.0, sum_rows = 0.0, sum_cols = 0.0;
  for (const auto &[_, n] : joint) index += Choose2(n);
  for (const auto &[_, n] : rows) sum_rows += Choose2(n);
  for (const auto &[_, n] : cols) sum_cols += Choose2(n);

  const double total = Choose2(static_cast<double>(a.size()));
  const double expected = total > 0.0 ? sum_rows * sum_cols / total : 0.0;
  const double max_index = 0.5 * (sum_rows + sum_cols);
  if (max_index == expected) return 1.0;
  return (index - expected) / (max_index - expected);
}

}  // namespace cohort
