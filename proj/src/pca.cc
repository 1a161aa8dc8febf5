// src/pca.cc

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

#include "cohort/pca.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include "cohort/errors.h"
#include "cohort/text-io.h"

namespace cohort {

Vector PcaModel::Transform(const Vector &x) const {
  if (x.size() != mean.size())
    throw std::invalid_argument("pca transform: expected length " +
                                std::to_string(mean.size()) + ", got " +
                                std::to_string(x.size()));
  return components * (x - mean);
}

Matrix PcaModel::TransformRows(const Matrix &x) const {
  if (x.cols() != mean.size())
    throw std::invalid_argument("pca transform: column count does not match model");
  Matrix centered = x.rowwise() - mean.transpose();
  return centered * components.transpose();
}

Vector PcaModel::InverseTransform(const Vector &y) const {
  if (y.size() != components.rows())
    throw std::invalid_argument("pca inverse_transform: expected length " +
                                std::to_string(components.rows()) + ", got " +
                                std::to_string(y.size()));
  return mean + components.transpose() * y;
}

PcaModel FitPca(const Matrix &data, const RankPolicy &policy) {
  const Eigen::Index n = data.rows();
  const Eigen::Index dim = data.cols();
  if (n < 2) throw NumericError("pca: need at least 2 rows, got " + std::to_string(n));
  if (dim < 1) throw std::invalid_argument("pca: data has no columns");
  if (!data.allFinite()) throw DataError("pca: data contains non-finite values");

  const Eigen::Index max_rank = std::min(n - 1, dim);
  if (policy.kind == RankPolicy::Kind::kFixedRank &&
      (policy.rank < 1 || policy.rank > max_rank)) {
    throw std::invalid_argument("pca: rank " + std::to_string(policy.rank) +
                                " outside [1, " + std::to_string(max_rank) + "]");
  }
  if (policy.kind == RankPolicy::Kind::kVarianceFraction &&
      !(policy.fraction > 0.0 && policy.fraction <= 1.0)) {
    throw std::invalid_argument("pca: variance fraction must be in (0, 1]");
  }

  bool all_identical = true;
  for (Eigen::Index i = 1; i < n && all_identical; ++i)
    all_identical = (data.row(i) == data.row(0));
  if (all_identical) throw NumericError("pca: all rows identical (zero variance)");

  PcaModel model;
  model.mean = data.colwise().mean().transpose();
  Matrix centered = data.rowwise() - model.mean.transpose();
  Eigen::MatrixXd cov = (centered.transpose() * centered) / static_cast<double>(n - 1);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov);
  if (solver.info() != Eigen::Success) throw NumericError("pca: eigendecomposition failed");

  // Eigen returns ascending eigenvalues; walk from the back.
  Vector values(dim);
  Eigen::MatrixXd vectors(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    values(i) = std::max(0.0, solver.eigenvalues()(dim - 1 - i));
    vectors.col(i) = solver.eigenvectors().col(dim - 1 - i);
  }
  double total = 0.0;
  for (Eigen::Index i = 0; i < dim; ++i) total += values(i);
  if (!(total > 0.0)) throw NumericError("pca: zero total variance");

  Eigen::Index rank = 0;
  if (policy.kind == RankPolicy::Kind::kFixedRank) {
    rank = policy.rank;
  } else {
    double cumulative = 0.0;
    for (rank = 0; rank < max_rank;) {
      cumulative += values(rank);
      ++rank;
      if (cumulative / total >= policy.fraction) break;
    }
  }

  model.components.resize(rank, dim);
  model.explained_variance.resize(rank);
  model.explained_variance_ratio.resize(rank);
  for (Eigen::Index i = 0; i < rank; ++i) {
    Vector c = vectors.col(i);
    Eigen::Index pivot = 0;
    for (Eigen::Index j = 1; j < dim; ++j)
      if (std::abs(c(j)) > std::abs(c(pivot))) pivot = j;
    if (c(pivot) < 0.0) c = -c;
    model.components.row(i) = c.transpose();
    model.explained_variance(i) = values(i);
    model.explained_variance_ratio(i) = values(i) / total;
  }
  return model;
}

void WritePcaModel(const PcaModel &model, std::ostream &out) {
  out << "pca-model 1\n";
  out << "dim " << model.Dim() << '\n';
  out << "rank " << model.Rank() << '\n';
  WriteKeyedRow(out, "mean", model.mean);
  for (int i = 0; i < model.Rank(); ++i)
    WriteKeyedRow(out, "component", model.components.row(i).data(), model.Dim());
  WriteKeyedRow(out, "explained_variance", model.explained_variance);
  WriteKeyedRow(out, "explained_variance_ratio", model.explained_variance_ratio);
}

PcaModel ReadPcaModel(std::istream &in) {
  ExpectHeader(in, "pca-model", 1);
  const long long dim = ReadKeyedInt(in, "dim");
  const long long rank = ReadKeyedInt(in, "rank");
  if (dim < 1 || rank < 1 || rank > dim) throw DataError("pca model: bad dim/rank");

  auto expect_len = [](const std::vector<double> &v, long long len, const char *what) {
    if (static_cast<long long>(v.size()) != len)
      throw DataError(std::string("pca model: wrong length for ") + what);
  };
  PcaModel model;
  auto mean = ReadKeyedRow(in, "mean");
  expect_len(mean, dim, "mean");
  model.mean = Eigen::Map<Vector>(mean.data(), dim);
  model.components.resize(rank, dim);
  for (long long i = 0; i < rank; ++i) {
    auto row = ReadKeyedRow(in, "component");
    expect_len(row, dim, "component");
    for (long long j = 0; j < dim; ++j) model.components(i, j) = row[j];
  }
  auto var = ReadKeyedRow(in, "explained_variance");
  expect_len(var, rank, "explained_variance");
  model.explained_variance = Eigen::Map<Vector>(var.data(), rank);
  auto ratio = ReadKeyedRow(in, "explained_variance_ratio");
  expect_len(ratio, rank, "explained_variance_ratio");
  model.explained_variance_ratio = Eigen::Map<Vector>(ratio.data(), rank);
  return model;
}

void SavePcaModel(const PcaModel &model, const std::string &path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write '" + path + "'");
  WritePcaModel(model, out);
}

PcaModel LoadPcaModel(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open pca model '" + path + "'");
  return ReadPcaModel(in);
}

}  // namespace cohort
