// src/kmeans.cc

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

#include "cohort/kmeans.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "cohort/errors.h"
#include "cohort/parallel.h"
#include "cohort/random.h"
#include "cohort/text-io.h"

namespace cohort {

namespace {

// Reduction granularity. Fixed so that sums do not depend on thread count.
constexpr Eigen::Index kChunkRows = 4096;

std::size_t NumChunks(Eigen::Index n) {
  return static_cast<std::size_t>((n + kChunkRows - 1) / kChunkRows);
}

double SquaredDistance(const Matrix &a, Eigen::Index i, const Matrix &b, Eigen::Index j) {
  return (a.row(i) - b.row(j)).squaredNorm();
}

int Nearest(const Matrix &centroids, const Matrix &data, Eigen::Index row, double *best_sq) {
  int best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (Eigen::Index c = 0; c < centroids.rows(); ++c) {
    double d = SquaredDistance(data, row, centroids, c);
    if (d < best_d) {
      best_d = d;
      best = static_cast<int>(c);
    }
  }
  if (best_sq) *best_sq = best_d;
  return best;
}

void AssignAll(const Matrix &centroids, const Matrix &data, int threads,
               std::vector<int> *labels, std::vector<double> *dists) {
  const Eigen::Index n = data.rows();
  labels->resize(n);
  dists->resize(n);
  ParallelFor(NumChunks(n), threads, [&](std::size_t chunk) {
    const Eigen::Index begin = static_cast<Eigen::Index>(chunk) * kChunkRows;
    const Eigen::Index end = std::min(n, begin + kChunkRows);
    for (Eigen::Index i = begin; i < end; ++i)
      (*labels)[i] = Nearest(centroids, data, i, &(*dists)[i]);
  });
}

double OrderedSum(const std::vector<double> &values, int threads) {
  const Eigen::Index n = static_cast<Eigen::Index>(values.size());
  std::vector<double> partial(NumChunks(n), 0.0);
  ParallelFor(partial.size(), threads, [&](std::size_t chunk) {
    const Eigen::Index begin = static_cast<Eigen::Index>(chunk) * kChunkRows;
    const Eigen::Index end = std::min(n, begin + kChunkRows);
    double s = 0.0;
    for (Eigen::Index i = begin; i < end; ++i) s += values[i];
    partial[chunk] = s;
  });
  double total = 0.0;
  for (double p : partial) total += p;
  return total;
}

Matrix KMeansPlusPlus(const Matrix &data, int k, std::uint64_t seed, int threads) {
  const Eigen::Index n = data.rows();
  Rng rng(seed);
  Matrix centroids(k, data.cols());
  Eigen::Index first = static_cast<Eigen::Index>(rng.UniformIndex(n));
  centroids.row(0) = data.row(first);

  std::vector<double> d2(n);
  ParallelFor(NumChunks(n), threads, [&](std::size_t chunk) {
    const Eigen::Index begin = static_cast<Eigen::Index>(chunk) * kChunkRows;
    const Eigen::Index end = std::min(n, begin + kChunkRows);
    for (Eigen::Index i = begin; i < end; ++i) d2[i] = SquaredDistance(data, i, centroids, 0);
  });

  std::vector<char> taken(n, 0);
  taken[first] = 1;
  for (int c = 1; c < k; ++c) {
    double total = 0.0;
    for (double v : d2) total += v;
    Eigen::Index pick = -1;
    if (total > 0.0) {
      const double target = rng.Uniform() * total;
      double cumulative = 0.0;
      for (Eigen::Index i = 0; i < n; ++i) {
        cumulative += d2[i];
        if (d2[i] > 0.0 && cumulative > target) {
          pick = i;
          break;
        }
      }
      if (pick < 0) {
        // Round-off left target beyond the last cumulative value.
        for (Eigen::Index i = n - 1; i >= 0; --i)
          if (d2[i] > 0.0) {
            pick = i;
            break;
          }
      }
    } else {
      // Every point coincides with a chosen center; fall back to the first
      // unused row so k distinct rows are still picked.
      for (Eigen::Index i = 0; i < n; ++i)
        if (!taken[i]) {
          pick = i;
          break;
        }
    }
    taken[pick] = 1;
    centroids.row(c) = data.row(pick);
    ParallelFor(NumChunks(n), threads, [&](std::size_t chunk) {
      const Eigen::Index begin = static_cast<Eigen::Index>(chunk) * kChunkRows;
      const Eigen::Index end = std::min(n, begin + kChunkRows);
      for (Eigen::Index i = begin; i < end; ++i)
        d2[i] = std::min(d2[i], SquaredDistance(data, i, centroids, c));
    });
  }
  return centroids;
}

// Empty clusters take the point farthest from its centroid, drawn from
// clusters that would not become empty themselves.
void RepairEmptyClusters(const Matrix &data, Matrix *centroids, std::vector<int> *labels,
                         std::vector<double> *dists) {
  const int k = static_cast<int>(centroids->rows());
  std::vector<Eigen::Index> counts(k, 0);
  for (int l : *labels) ++counts[l];
  for (int c = 0; c < k; ++c) {
    if (counts[c] != 0) continue;
    Eigen::Index far = -1;
    double far_d = 0.0;
    for (Eigen::Index i = 0; i < data.rows(); ++i) {
      if (counts[(*labels)[i]] > 1 && (*dists)[i] > far_d) {
        far_d = (*dists)[i];
        far = i;
      }
    }
    if (far < 0) continue;  // all points sit on their centroids
    --counts[(*labels)[far]];
    ++counts[c];
    (*labels)[far] = c;
    (*dists)[far] = 0.0;
    centroids->row(c) = data.row(far);
  }
}

// Centroid means via per-chunk partial sums combined in chunk order. Returns
// the largest Euclidean centroid shift. Empty clusters keep their centroid.
double UpdateCentroids(const Matrix &data, const std::vector<int> &labels, int threads,
                       Matrix *centroids) {
  const Eigen::Index n = data.rows();
  const Eigen::Index k = centroids->rows();
  const Eigen::Index r = centroids->cols();
  const std::size_t chunks = NumChunks(n);
  std::vector<Matrix> sums(chunks, Matrix::Zero(k, r));
  std::vector<std::vector<Eigen::Index>> counts(chunks, std::vector<Eigen::Index>(k, 0));
  ParallelFor(chunks, threads, [&](std::size_t chunk) {
    const Eigen::Index begin = static_cast<Eigen::Index>(chunk) * kChunkRows;
    const Eigen::Index end = std::min(n, begin + kChunkRows);
    for (Eigen::Index i = begin; i < end; ++i) {
      sums[chunk].row(labels[i]) += data.row(i);
      ++counts[chunk][labels[i]];
    }
  });
  Matrix total = Matrix::Zero(k, r);
  std::vector<Eigen::Index> total_counts(k, 0);
  for (std::size_t chunk = 0; chunk < chunks; ++chunk) {
    total += sums[chunk];
    for (Eigen::Index c = 0; c < k; ++c) total_counts[c] += counts[chunk][c];
  }
  double max_shift = 0.0;
  for (Eigen::Index c = 0; c < k; ++c) {
    if (total_counts[c] == 0) continue;
    Eigen::RowVectorXd updated = total.row(c) / static_cast<double>(total_counts[c]);
    max_shift = std::max(max_shift, (updated - centroids->row(c)).norm());
    centroids->row(c) = updated;
  }
  return max_shift;
}

void CheckFitInput(const Matrix &data, int k) {
  if (k < 1) throw std::invalid_argument("kmeans: k must be positive");
  if (data.rows() < k)
    throw NumericError("kmeans: cannot form " + std::to_string(k) + " clusters from " +
                       std::to_string(data.rows()) + " points");
  if (!data.allFinite()) throw DataError("kmeans: data contains non-finite values");
}

Matrix SelectRows(const Matrix &data, const std::vector<Eigen::Index> &rows) {
  Matrix out(static_cast<Eigen::Index>(rows.size()), data.cols());
  for (std::size_t i = 0; i < rows.size(); ++i)
    out.row(static_cast<Eigen::Index>(i)) = data.row(rows[i]);
  return out;
}

}  // namespace

ClusterId KMeansModel::Assign(const Vector &x) const {
  if (x.size() != centroids.cols())
    throw std::invalid_argument("kmeans assign: expected length " +
                                std::to_string(centroids.cols()) + ", got " +
                                std::to_string(x.size()));
  int best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (Eigen::Index c = 0; c < centroids.rows(); ++c) {
    double d = (centroids.row(c) - x.transpose()).squaredNorm();
    if (d < best_d) {
      best_d = d;
      best = static_cast<int>(c);
    }
  }
  return ClusterId{best};
}

std::vector<int> AssignRows(const KMeansModel &model, const Matrix &data, int num_threads) {
  if (data.cols() != model.centroids.cols())
    throw std::invalid_argument("kmeans assign: column count does not match model");
  std::vector<int> labels;
  std::vector<double> dists;
  AssignAll(model.centroids, data, num_threads, &labels, &dists);
  return labels;
}

double ComputeInertia(const KMeansModel &model, const Matrix &data,
                      const std::vector<int> &assignments) {
  double total = 0.0;
  for (Eigen::Index i = 0; i < data.rows(); ++i)
    total += SquaredDistance(data, i, model.centroids, assignments[i]);
  return total;
}

KMeansFit FitKMeans(const Matrix &data, int k, std::uint64_t seed,
                    const KMeansOptions &options) {
  CheckFitInput(data, k);
  if (options.max_iter < 1) throw std::invalid_argument("kmeans: max_iter must be positive");
  if (!(options.tol >= 0.0)) throw std::invalid_argument("kmeans: tol must be nonnegative");
  const int threads = options.num_threads;

  KMeansFit fit;
  KMeansModel &model = fit.model;
  model.k = k;
  model.requested_k = k;
  model.seed = seed;
  model.centroids = KMeansPlusPlus(data, k, seed, threads);

  std::vector<int> &labels = fit.assignments;
  std::vector<double> dists;
  for (int iter = 0; iter < options.max_iter; ++iter) {
    AssignAll(model.centroids, data, threads, &labels, &dists);
    RepairEmptyClusters(data, &model.centroids, &labels, &dists);
    fit.inertia_history.push_back(OrderedSum(dists, threads));
    double shift = UpdateCentroids(data, labels, threads, &model.centroids);
    model.iterations = iter + 1;
    if (shift <= options.tol) {
      model.converged = true;
      break;
    }
  }
  // Final labels always come from the final centroids.
  AssignAll(model.centroids, data, threads, &labels, &dists);
  model.inertia = OrderedSum(dists, threads);
  fit.inertia_history.push_back(model.inertia);
  return fit;
}

namespace {

struct HierarchyState {
  const KMeansOptions *options;
  std::vector<Eigen::RowVectorXd> leaves;
  int iterations = 0;
  bool converged = true;
};

void Recurse(const Matrix &data, const std::vector<int> &branching, std::size_t level,
             std::uint64_t seed, HierarchyState *state) {
  KMeansFit fit = FitKMeans(data, branching[level], seed, *state->options);
  state->iterations += fit.model.iterations;
  state->converged = state->converged && fit.model.converged;
  for (int c = 0; c < fit.model.k; ++c) {
    std::vector<Eigen::Index> members;
    for (Eigen::Index i = 0; i < data.rows(); ++i)
      if (fit.assignments[i] == c) members.push_back(i);
    const bool last = level + 1 == branching.size();
    if (last || static_cast<int>(members.size()) < branching[level + 1]) {
      state->leaves.push_back(fit.model.centroids.row(c));
    } else {
      Recurse(SelectRows(data, members), branching, level + 1,
              DeriveSeed(seed, static_cast<std::uint64_t>(c)), state);
    }
  }
}

}  // namespace

KMeansFit FitHierarchical(const Matrix &data, const std::vector<int> &branching,
                          std::uint64_t seed, const KMeansOptions &options) {
  if (branching.empty()) throw std::invalid_argument("hierarchical kmeans: empty branching");
  long long product = 1;
  for (int b : branching) {
    if (b < 1) throw std::invalid_argument("hierarchical kmeans: branching factors must be positive");
    product *= b;
    if (product > data.rows())
      throw NumericError("hierarchical kmeans: branching product exceeds " +
                         std::to_string(data.rows()) + " points");
  }
  CheckFitInput(data, branching[0]);

  HierarchyState state{&options, {}, 0, true};
  Recurse(data, branching, 0, seed, &state);

  KMeansFit fit;
  KMeansModel &model = fit.model;
  model.k = static_cast<int>(state.leaves.size());
  model.requested_k = static_cast<int>(product);
  model.seed = seed;
  model.iterations = state.iterations;
  model.converged = state.converged;
  model.centroids.resize(model.k, data.cols());
  for (int c = 0; c < model.k; ++c) model.centroids.row(c) = state.leaves[c];

  std::vector<double> dists;
  AssignAll(model.centroids, data, options.num_threads, &fit.assignments, &dists);
  model.inertia = OrderedSum(dists, options.num_threads);
  fit.inertia_history.push_back(model.inertia);
  return fit;
}

WssCurve ComputeWssCurve(const Matrix &data, const std::vector<int> &k_values,
                         std::uint64_t seed, const KMeansOptions &options) {
  if (k_values.empty()) throw std::invalid_argument("wss curve: no k values");
  for (std::size_t i = 1; i < k_values.size(); ++i)
    if (k_values[i] <= k_values[i - 1])
      throw std::invalid_argument("wss curve: k values must be strictly increasing");

  WssCurve curve;
  for (int k : k_values) {
    const std::uint64_t k_seed = DeriveSeed(seed, static_cast<std::uint64_t>(k));
    double wss = FitKMeans(data, k, k_seed, options).model.inertia;
    if (!curve.empty() && wss > curve.back().wss) {
      double retry = FitKMeans(data, k, DeriveSeed(k_seed, 1), options).model.inertia;
      wss = std::min(wss, retry);
    }
    curve.push_back({k, wss});
  }
  return curve;
}

int SelectElbow(const WssCurve &curve) {
  if (curve.size() < 3) throw std::invalid_argument("elbow: need at least 3 curve points");
  double lo = curve.front().wss, hi = curve.front().wss;
  for (const WssPoint &p : curve) {
    lo = std::min(lo, p.wss);
    hi = std::max(hi, p.wss);
  }
  const double span = hi - lo;
  std::vector<double> y(curve.size(), 0.0);
  if (span > 0.0)
    for (std::size_t i = 0; i < curve.size(); ++i) y[i] = (curve[i].wss - lo) / span;

  // Second differences of values already in [0, 1]; differences within
  // 1e-12 count as ties.
  constexpr double kTie = 1e-12;
  std::vector<double> second(curve.size(), 0.0);
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i + 1 < curve.size(); ++i) {
    second[i] = y[i - 1] - 2.0 * y[i] + y[i + 1];
    best = std::max(best, second[i]);
  }
  for (std::size_t i = 1; i + 1 < curve.size(); ++i)
    if (second[i] >= best - kTie) return curve[i].k;
  return curve[1].k;
}

void WriteKMeansModel(const KMeansModel &model, std::ostream &out) {
  out << "kmeans-model 1\n";
  out << "k " << model.k << '\n';
  out << "dim " << model.Dim() << '\n';
  out << "requested_k " << model.requested_k << '\n';
  out << "seed " << model.seed << '\n';
  out << "iterations " << model.iterations << '\n';
  out << "converged " << (model.converged ? 1 : 0) << '\n';
  out << "inertia " << FormatReal(model.inertia) << '\n';
  for (int c = 0; c < model.k; ++c)
    WriteKeyedRow(out, "centroid", model.centroids.row(c).data(), model.Dim());
}

KMeansModel ReadKMeansModel(std::istream &in) {
  ExpectHeader(in, "kmeans-model", 1);
  KMeansModel model;
  const long long k = ReadKeyedInt(in, "k");
  const long long dim = ReadKeyedInt(in, "dim");
  if (k < 1 || dim < 1) throw DataError("kmeans model: bad k/dim");
  model.k = static_cast<int>(k);
  model.requested_k = static_cast<int>(ReadKeyedInt(in, "requested_k"));
  model.seed = ReadKeyedU64(in, "seed");
  model.iterations = static_cast<int>(ReadKeyedInt(in, "iterations"));
  model.converged = ReadKeyedInt(in, "converged") != 0;
  auto inertia = ReadKeyedRow(in, "inertia");
  if (inertia.size() != 1) throw DataError("kmeans model: bad inertia");
  model.inertia = inertia[0];
  model.centroids.resize(k, dim);
  for (long long c = 0; c < k; ++c) {
    auto row = ReadKeyedRow(in, "centroid");
    if (static_cast<long long>(row.size()) != dim)
      throw DataError("kmeans model: centroid of wrong length");
    for (long long j = 0; j < dim; ++j) model.centroids(c, j) = row[j];
  }
  return model;
}

void SaveKMeansModel(const KMeansModel &model, const std::string &path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write '" + path + "'");
  WriteKMeansModel(model, out);
}

KMeansModel LoadKMeansModel(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open kmeans model '" + path + "'");
  return ReadKMeansModel(in);
}

void WriteAssignments(const std::vector<std::string> &utt_ids,
                      const std::vector<ClusterId> &ids, std::ostream &out) {
  if (utt_ids.size() != ids.size())
    throw std::invalid_argument("assignments: id and cluster counts differ");
  out << "utt_id,cluster_id\n";
  for (std::size_t i = 0; i < ids.size(); ++i) out << utt_ids[i] << ',' << ids[i].value << '\n';
}

AssignmentTable ReadAssignments(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open assignments file '" + path + "'");
  std::string line;
  if (!std::getline(in, line) || line != "utt_id,cluster_id")
    throw DataError("assignments file '" + path + "': missing header");
  AssignmentTable table;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    auto comma = line.rfind(',');
    if (comma == std::string::npos || comma == 0)
      throw DataError("assignments line " + std::to_string(line_no) + ": malformed");
    const std::string value = line.substr(comma + 1);
    char *end = nullptr;
    long v = std::strtol(value.c_str(), &end, 10);
    if (value.empty() || *end != '\0' || v < 0)
      throw DataError("assignments line " + std::to_string(line_no) + ": bad cluster id");
    table.utt_ids.push_back(line.substr(0, comma));
    table.ids.push_back(ClusterId{static_cast<int>(v)});
  }
  return table;
}

}  // namespace cohort
