// tests/oracles.h

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

// Reference implementations used as test oracles. They are deliberately
// naive (explicit loops, exhaustive search) and share no code with the
// library they check.

#ifndef COHORT_TESTS_ORACLES_H_
#define COHORT_TESTS_ORACLES_H_

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "cohort/corpus.h"
#include "cohort/fairness-eval.h"

namespace oracle {

using cohort::AlignmentStats;
using cohort::Matrix;

// Sample covariance with explicit loops (divisor n - 1).
inline std::vector<std::vector<double>> Covariance(const Matrix &x) {
  const int n = static_cast<int>(x.rows()), d = static_cast<int>(x.cols());
  std::vector<double> mean(d, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < d; ++j) mean[j] += x(i, j) / n;
  std::vector<std::vector<double>> cov(d, std::vector<double>(d, 0.0));
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) {
      double s = 0.0;
      for (int i = 0; i < n; ++i) s += (x(i, a) - mean[a]) * (x(i, b) - mean[b]);
      cov[a][b] = s / (n - 1);
    }
  return cov;
}

// Cyclic Jacobi rotations; returns eigenvalues sorted descending and the
// matching eigenvectors as columns.
inline void JacobiEigen(std::vector<std::vector<double>> a, std::vector<double> *values,
                        std::vector<std::vector<double>> *vectors) {
  const int n = static_cast<int>(a.size());
  std::vector<std::vector<double>> v(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i) v[i][i] = 1.0;
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) off += a[p][q] * a[p][q];
    if (off < 1e-30) break;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) {
        if (a[p][q] == 0.0) continue;
        const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
        for (int k = 0; k < n; ++k) {
          const double akp = a[k][p], akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          const double apk = a[p][k], aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
        for (int k = 0; k < n; ++k) {
          const double vkp = v[k][p], vkq = v[k][q];
          v[k][p] = c * vkp - s * vkq;
          v[k][q] = s * vkp + c * vkq;
        }
      }
  }
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](int x, int y) { return a[x][x] > a[y][y]; });
  values->clear();
  vectors->assign(n, std::vector<double>(n));
  for (int i = 0; i < n; ++i) {
    values->push_back(a[order[i]][order[i]]);
    for (int k = 0; k < n; ++k) (*vectors)[k][i] = v[k][order[i]];
  }
}

// Moves are encoded so that a lexicographically smaller sequence (read from
// the end of both strings) is the preferred alignment: diagonal, then
// deletion, then insertion.
struct Path {
  long long cost = 0;
  std::string moves;  // 'a' diagonal, 'b' deletion, 'c' insertion
  AlignmentStats stats;
};

inline void Enumerate(const std::vector<std::string> &r, const std::vector<std::string> &h, std::size_t i, std::size_t j, Path cur,
               std::vector<Path> *out) {
  if (i == 0 && j == 0) {
    out->push_back(cur);
    return;
  }
  if (i > 0 && j > 0) {
    Path p = cur;
    p.moves += 'a';
    if (r[i - 1] != h[j - 1]) {
      ++p.cost;
      ++p.stats.substitutions;
    }
    Enumerate(r, h, i - 1, j - 1, p, out);
  }
  if (i > 0) {
    Path p = cur;
    p.moves += 'b';
    ++p.cost;
    ++p.stats.deletions;
    Enumerate(r, h, i - 1, j, p, out);
  }
  if (j > 0) {
    Path p = cur;
    p.moves += 'c';
    ++p.cost;
    ++p.stats.insertions;
    Enumerate(r, h, i, j - 1, p, out);
  }
}

inline AlignmentStats EnumerationOracle(const std::vector<std::string> &r, const std::vector<std::string> &h) {
  std::vector<Path> paths;
  Enumerate(r, h, r.size(), h.size(), Path{}, &paths);
  const Path *best = &paths[0];
  for (const Path &p : paths)
    if (p.cost < best->cost || (p.cost == best->cost && p.moves < best->moves)) best = &p;
  AlignmentStats s = best->stats;
  s.n_ref = static_cast<long long>(r.size());
  return s;
}

// Every token list of length <= max_len over {x, y, z}.
inline std::vector<std::vector<std::string>> AllStrings(int max_len) {
  std::vector<std::vector<std::string>> out = {{}};
  std::size_t begin = 0;
  for (int len = 1; len <= max_len; ++len) {
    const std::size_t end = out.size();
    for (std::size_t i = begin; i < end; ++i)
      for (const char *t : {"x", "y", "z"}) {
        std::vector<std::string> next = out[i];
        next.push_back(t);
        out.push_back(next);
      }
    begin = end;
  }
  return out;
}

}  // namespace oracle

#endif  // COHORT_TESTS_ORACLES_H_
