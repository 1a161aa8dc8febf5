// src/corpus.cc

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

#include "cohort/corpus.h"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include "cohort/errors.h"
#include "cohort/random.h"
#include "json.hpp"

namespace cohort {

using Json = nlohmann::json;
using OrderedJson = nlohmann::ordered_json;

Corpus::Corpus(int dim, std::vector<UtteranceRecord> records)
    : dim_(dim), records_(std::move(records)) {
  if (dim_ <= 0) throw std::invalid_argument("corpus dimension must be positive");
  std::unordered_set<std::string> seen;
  for (const UtteranceRecord &r : records_) {
    if (static_cast<int>(r.embedding.size()) != dim_) {
      throw DataError("utterance '" + r.utt_id + "' has embedding of length " +
                      std::to_string(r.embedding.size()) + ", expected " +
                      std::to_string(dim_));
    }
    for (double v : r.embedding) {
      if (!std::isfinite(v))
        throw DataError("utterance '" + r.utt_id + "' has a non-finite embedding value");
    }
    if (r.duration_s && !(*r.duration_s >= 0.0 && std::isfinite(*r.duration_s)))
      throw DataError("utterance '" + r.utt_id + "' has an invalid duration_s");
    if (!seen.insert(r.utt_id).second)
      throw DataError("duplicate utt_id '" + r.utt_id + "'");
  }
}

EmbeddingView Corpus::Embeddings() const {
  EmbeddingView view;
  view.utt_ids.reserve(records_.size());
  view.embeddings.resize(static_cast<Eigen::Index>(records_.size()), dim_);
  for (std::size_t i = 0; i < records_.size(); ++i) {
    view.utt_ids.push_back(records_[i].utt_id);
    for (int j = 0; j < dim_; ++j)
      view.embeddings(static_cast<Eigen::Index>(i), j) = records_[i].embedding[j];
  }
  return view;
}

std::vector<SegmentWindow> SegmentPlan(double duration_s, double chunk_s) {
  if (!(duration_s > 0.0) || !std::isfinite(duration_s))
    throw std::invalid_argument("segment_plan: duration must be positive");
  if (!(chunk_s > 0.0) || !std::isfinite(chunk_s))
    throw std::invalid_argument("segment_plan: chunk length must be positive");

  auto n_full = static_cast<long long>(std::floor(duration_s / chunk_s));
  double remainder = duration_s - static_cast<double>(n_full) * chunk_s;
  // Division can land one ulp short of an integer count.
  if (chunk_s - remainder <= 1e-9 * chunk_s) {
    ++n_full;
    remainder = 0.0;
  }

  std::vector<SegmentWindow> windows;
  windows.reserve(static_cast<std::size_t>(n_full) + 1);
  for (long long i = 0; i < n_full; ++i) {
    windows.push_back({static_cast<double>(i) * chunk_s,
                       static_cast<double>(i + 1) * chunk_s});
  }
  if (remainder > 0.0) {
    if (remainder >= 1.0 || windows.empty()) {
      double start = windows.empty() ? 0.0 : windows.back().end_s;
      windows.push_back({start, duration_s});
    } else {
      windows.back().end_s = duration_s;
    }
  } else if (!windows.empty()) {
    windows.back().end_s = duration_s;
  }
  return windows;
}

namespace {

UtteranceRecord ParseRecordLine(const std::string &line, std::size_t line_no) {
  auto fail = [line_no](const std::string &msg) -> DataError {
    return DataError("line " + std::to_string(line_no) + ": " + msg);
  };
  Json j;
  try {
    j = Json::parse(line);
  } catch (const Json::out_of_range &e) {
    throw fail(std::string("non-finite number (") + e.what() + ")");
  } catch (const Json::exception &e) {
    throw fail(std::string("malformed JSON (") + e.what() + ")");
  }
  if (!j.is_object()) throw fail("record is not an object");

  UtteranceRecord r;
  auto id = j.find("utt_id");
  if (id == j.end() || !id->is_string()) throw fail("missing string utt_id");
  r.utt_id = id->get<std::string>();

  auto emb = j.find("embedding");
  if (emb == j.end() || !emb->is_array())
    throw fail("utterance '" + r.utt_id + "' has no embedding array");
  r.embedding.reserve(emb->size());
  for (const Json &v : *emb) {
    if (!v.is_number())
      throw fail("utterance '" + r.utt_id + "' has a non-numeric embedding value");
    r.embedding.push_back(v.get<double>());
  }

  if (auto d = j.find("duration_s"); d != j.end() && !d->is_null()) {
    if (!d->is_number()) throw fail("duration_s is not a number");
    r.duration_s = d->get<double>();
  }
  if (auto m = j.find("meta"); m != j.end() && !m->is_null()) {
    if (!m->is_object()) throw fail("meta is not an object");
    for (const auto &[key, value] : m->items()) {
      if (!value.is_string()) throw fail("meta value for '" + key + "' is not a string");
      r.meta[key] = value.get<std::string>();
    }
  }
  return r;
}

bool IsBlank(const std::string &line) {
  return line.find_first_not_of(" \t\r") == std::string::npos;
}

}  // namespace

Corpus ParseCorpus(std::istream &in, int expected_dim) {
  std::vector<UtteranceRecord> records;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (IsBlank(line)) continue;
    records.push_back(ParseRecordLine(line, line_no));
  }
  return Corpus(expected_dim, std::move(records));
}

Corpus LoadCorpus(const std::string &path, int expected_dim) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open corpus file '" + path + "'");
  return ParseCorpus(in, expected_dim);
}

void WriteCorpus(const Corpus &corpus, std::ostream &out) {
  for (const UtteranceRecord &r : corpus.Records()) {
    OrderedJson j;
    j["utt_id"] = r.utt_id;
    j["embedding"] = r.embedding;
    if (r.duration_s) j["duration_s"] = *r.duration_s;
    if (!r.meta.empty()) j["meta"] = r.meta;
    out << j.dump() << '\n';
  }
}

void SaveCorpus(const Corpus &corpus, const std::string &path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write '" + path + "'");
  WriteCorpus(corpus, out);
}

std::vector<std::string> ReadUtteranceIds(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open corpus file '" + path + "'");
  std::vector<std::string> ids;
  std::unordered_set<std::string> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (IsBlank(line)) continue;
    Json j;
    try {
      j = Json::parse(line);
    } catch (const Json::exception &) {
      throw DataError("line " + std::to_string(line_no) + ": malformed JSON");
    }
    auto id = j.find("utt_id");
    if (!j.is_object() || id == j.end() || !id->is_string())
      throw DataError("line " + std::to_string(line_no) + ": missing string utt_id");
    if (!seen.insert(id->get<std::string>()).second)
      throw DataError("duplicate utt_id '" + id->get<std::string>() + "'");
    ids.push_back(id->get<std::string>());
  }
  return ids;
}

SyntheticCorpus SynthCorpus(int n_clusters, int per_cluster, int dim,
                            double separation, double noise_sigma,
                            std::uint64_t seed) {
  if (n_clusters <= 0 || per_cluster <= 0 || dim <= 0)
    throw std::invalid_argument("synth_corpus: counts must be positive");
  if (!(separation > 0.0) || !(noise_sigma > 0.0))
    throw std::invalid_argument("synth_corpus: separation and noise must be positive");

  Rng rng(seed);

  // Centers uniform in a cube wide enough that rejection usually succeeds
  // quickly; the cube grows if it does not.
  double side = 2.0 * separation *
                std::ceil(std::pow(static_cast<double>(n_clusters), 1.0 / dim));
  std::vector<std::vector<double>> centers;
  const double min_sq = separation * separation;
  int failures = 0;
  while (static_cast<int>(centers.size()) < n_clusters) {
    std::vector<double> c(dim);
    for (double &v : c) v = (rng.Uniform() - 0.5) * side;
    bool ok = true;
    for (const auto &other : centers) {
      double sq = 0.0;
      for (int j = 0; j < dim; ++j) sq += (c[j] - other[j]) * (c[j] - other[j]);
      if (sq < min_sq) {
        ok = false;
        break;
      }
    }
    if (ok) {
      centers.push_back(std::move(c));
    } else if (++failures > 1000) {
      side *= 1.5;
      failures = 0;
    }
  }

  const int n = n_clusters * per_cluster;
  std::vector<UtteranceRecord> records;
  records.reserve(n);
  SyntheticCorpus out;
  char id_buf[32];
  for (int i = 0; i < n; ++i) {
    const int label = i % n_clusters;
    UtteranceRecord r;
    std::snprintf(id_buf, sizeof(id_buf), "synth-%06d", i);
    r.utt_id = id_buf;
    r.embedding.resize(dim);
    for (int j = 0; j < dim; ++j)
      r.embedding[j] = centers[label][j] + noise_sigma * rng.Normal();
    r.meta[kSyntheticTruthAxis] = std::to_string(label);
    out.ground_truth[r.utt_id] = label;
    records.push_back(std::move(r));
  }
  out.corpus = Corpus(dim, std::move(records));
  return out;
}

}  // namespace cohort
