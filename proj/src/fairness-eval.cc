// src/fairness-eval.cc

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

#include "cohort/fairness-eval.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "cohort/errors.h"
#include "cohort/parallel.h"
#include "cohort/random.h"
#include "json.hpp"

namespace cohort {

std::vector<std::string> Tokenize(std::string_view text, const TokenizeOptions &options) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    std::size_t j = i;
    while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
    if (j == i) break;
    std::string_view word = text.substr(i, j - i);
    if (options.strip_punctuation) {
      while (!word.empty() && std::ispunct(static_cast<unsigned char>(word.front())))
        word.remove_prefix(1);
      while (!word.empty() && std::ispunct(static_cast<unsigned char>(word.back())))
        word.remove_suffix(1);
    }
    if (!word.empty()) {
      std::string token(word);
      if (options.case_fold)
        for (char &c : token) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
      tokens.push_back(std::move(token));
    }
    i = j;
  }
  return tokens;
}

AlignmentStats EditAlign(std::span<const std::string> ref, std::span<const std::string> hyp) {
  const std::size_t n = ref.size(), m = hyp.size();
  const std::size_t width = m + 1;
  std::vector<long long> cost((n + 1) * width);
  auto at = [&](std::size_t i, std::size_t j) -> long long & { return cost[i * width + j]; };
  for (std::size_t i = 0; i <= n; ++i) at(i, 0) = static_cast<long long>(i);
  for (std::size_t j = 0; j <= m; ++j) at(0, j) = static_cast<long long>(j);
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= m; ++j) {
      const long long diag = at(i - 1, j - 1) + (ref[i - 1] == hyp[j - 1] ? 0 : 1);
      at(i, j) = std::min({diag, at(i - 1, j) + 1, at(i, j - 1) + 1});
    }
  }

  AlignmentStats stats;
  stats.n_ref = static_cast<long long>(n);
  std::size_t i = n, j = m;
  while (i > 0 || j > 0) {
    if (i > 0 && j > 0) {
      const bool same = ref[i - 1] == hyp[j - 1];
      if (at(i, j) == at(i - 1, j - 1) + (same ? 0 : 1)) {
        if (!same) ++stats.substitutions;
        --i;
        --j;
        continue;
      }
    }
    if (i > 0 && at(i, j) == at(i - 1, j) + 1) {
      ++stats.deletions;
      --i;
    } else {
      ++stats.insertions;
      --j;
    }
  }
  return stats;
}

double CorpusWer(std::span<const EvalUtterance> utterances) {
  long long errors = 0, n_ref = 0;
  for (const EvalUtterance &u : utterances) {
    AlignmentStats s = EditAlign(u.ref_tokens, u.hyp_tokens);
    errors += s.Errors();
    n_ref += s.n_ref;
  }
  if (n_ref == 0) throw std::invalid_argument("corpus_wer: no reference tokens");
  return static_cast<double>(errors) / static_cast<double>(n_ref);
}

double RelativeDiff(double baseline_wer, double treatment_wer) {
  if (!(baseline_wer > 0.0)) throw std::invalid_argument("relative_diff: baseline WER must be positive");
  return 100.0 * (baseline_wer - treatment_wer) / baseline_wer;
}

std::string FormatTruncated(double value, int decimals) {
  if (decimals < 0 || decimals > 9) throw std::invalid_argument("format: bad decimal count");
  const double scale = std::pow(10.0, decimals);
  // The nudge keeps values such as 4.82 (stored as 4.8199999...) at 4.82.
  const double scaled = std::trunc(value * scale + std::copysign(1e-7, value));
  const long long units = static_cast<long long>(std::abs(scaled));
  const long long whole = units / static_cast<long long>(scale);
  const long long frac = units % static_cast<long long>(scale);
  std::string out = (scaled < 0.0 ? "-" : "") + std::to_string(whole);
  if (decimals > 0) {
    std::string f = std::to_string(frac);
    out += "." + std::string(static_cast<std::size_t>(decimals) - f.size(), '0') + f;
  }
  return out;
}

namespace {

struct UttStats {
  long long baseline_errors;
  long long treatment_errors;
  long long n_ref;
};

// Treatment entries in baseline order, after checking both systems describe
// the same utterances.
std::vector<const EvalUtterance *> PairUp(std::span<const EvalUtterance> baseline,
                                          std::span<const EvalUtterance> treatment) {
  if (baseline.size() != treatment.size())
    throw DataError("baseline has " + std::to_string(baseline.size()) + " utterances, treatment " +
                    std::to_string(treatment.size()));
  std::unordered_map<std::string, const EvalUtterance *> by_id;
  for (const EvalUtterance &u : treatment)
    if (!by_id.emplace(u.utt_id, &u).second)
      throw DataError("treatment repeats utt_id '" + u.utt_id + "'");
  std::unordered_set<std::string> seen;
  std::vector<const EvalUtterance *> paired;
  paired.reserve(baseline.size());
  for (const EvalUtterance &b : baseline) {
    if (!seen.insert(b.utt_id).second) throw DataError("baseline repeats utt_id '" + b.utt_id + "'");
    auto it = by_id.find(b.utt_id);
    if (it == by_id.end()) throw DataError("utt_id '" + b.utt_id + "' missing from treatment");
    if (it->second->ref_tokens != b.ref_tokens)
      throw DataError("utt_id '" + b.utt_id + "' has different references in the two systems");
    if (it->second->groups != b.groups)
      throw DataError("utt_id '" + b.utt_id + "' has different groups in the two systems");
    paired.push_back(it->second);
  }
  return paired;
}

std::vector<UttStats> PairedStats(std::span<const EvalUtterance> baseline,
                                  std::span<const EvalUtterance> treatment) {
  auto paired = PairUp(baseline, treatment);
  std::vector<UttStats> stats;
  stats.reserve(baseline.size());
  for (std::size_t i = 0; i < baseline.size(); ++i) {
    AlignmentStats b = EditAlign(baseline[i].ref_tokens, baseline[i].hyp_tokens);
    AlignmentStats t = EditAlign(paired[i]->ref_tokens, paired[i]->hyp_tokens);
    stats.push_back({b.Errors(), t.Errors(), b.n_ref});
  }
  return stats;
}

double Percentile(const std::vector<double> &sorted, double q) {
  const double h = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const auto hi = static_cast<std::size_t>(std::ceil(h));
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

}  // namespace

GroupReport BuildGroupReport(std::span<const EvalUtterance> baseline,
                             std::span<const EvalUtterance> treatment,
                             const std::vector<std::string> &axes) {
  auto paired = PairUp(baseline, treatment);
  GroupReport report;
  for (const std::string &axis : axes) {
    std::vector<std::string> labels;
    std::map<std::string, std::pair<std::vector<EvalUtterance>, std::vector<EvalUtterance>>> split;
    for (std::size_t i = 0; i < baseline.size(); ++i) {
      auto g = baseline[i].groups.find(axis);
      if (g == baseline[i].groups.end()) {
        ++report.missing_axis[axis];
        continue;
      }
      auto [it, inserted] = split.try_emplace(g->second);
      if (inserted) labels.push_back(g->second);
      it->second.first.push_back(baseline[i]);
      it->second.second.push_back(*paired[i]);
    }
    for (const std::string &label : labels) {
      const auto &[b, t] = split.at(label);
      GroupRow row;
      row.axis = axis;
      row.label = label;
      row.baseline_wer = 100.0 * CorpusWer(b);
      row.treatment_wer = 100.0 * CorpusWer(t);
      row.rel_diff = row.baseline_wer > 0.0 ? RelativeDiff(row.baseline_wer, row.treatment_wer) : 0.0;
      row.n_utts = static_cast<long long>(b.size());
      report.rows.push_back(std::move(row));
    }
  }
  return report;
}

void WriteGroupReport(const GroupReport &report, std::ostream &out) {
  out << "axis,label,baseline_wer,cluster_wer,rel_diff,n_utts\n";
  char buf[64];
  for (const GroupRow &row : report.rows) {
    out << row.axis << ',' << row.label << ',';
    std::snprintf(buf, sizeof(buf), "%.2f,%.2f,", row.baseline_wer, row.treatment_wer);
    out << buf << FormatTruncated(row.rel_diff) << ',' << row.n_utts << '\n';
  }
}

BootstrapResult PairedBootstrap(std::span<const EvalUtterance> baseline,
                                std::span<const EvalUtterance> treatment,
                                const BootstrapOptions &options) {
  if (options.resamples < 100) throw std::invalid_argument("bootstrap: need at least 100 resamples");
  if (!(options.confidence > 0.0 && options.confidence < 1.0))
    throw std::invalid_argument("bootstrap: confidence must be in (0, 1)");
  if (baseline.empty()) throw std::invalid_argument("bootstrap: no utterances");
  const std::vector<UttStats> stats = PairedStats(baseline, treatment);

  auto delta_of = [](long long eb, long long et, long long n) {
    return n == 0 ? 0.0 : static_cast<double>(eb - et) / static_cast<double>(n);
  };
  long long eb = 0, et = 0, nr = 0;
  for (const UttStats &s : stats) {
    eb += s.baseline_errors;
    et += s.treatment_errors;
    nr += s.n_ref;
  }
  if (nr == 0) throw std::invalid_argument("bootstrap: no reference tokens");

  BootstrapResult result;
  result.delta = delta_of(eb, et, nr);

  std::vector<double> deltas(static_cast<std::size_t>(options.resamples));
  ParallelFor(deltas.size(), options.num_threads, [&](std::size_t r) {
    Rng rng(DeriveSeed(options.seed, r));
    long long b = 0, t = 0, n = 0;
    for (std::size_t i = 0; i < stats.size(); ++i) {
      const UttStats &s = stats[rng.UniformIndex(stats.size())];
      b += s.baseline_errors;
      t += s.treatment_errors;
      n += s.n_ref;
    }
    deltas[r] = delta_of(b, t, n);
  });

  double sum = 0.0, opposite = 0.0;
  for (double d : deltas) {
    sum += d;
    if (d == 0.0) {
      opposite += 0.5;
    } else if ((result.delta >= 0.0) != (d > 0.0)) {
      opposite += 1.0;
    }
  }
  const double count = static_cast<double>(deltas.size());
  result.mean_delta = sum / count;
  result.p_value = std::min(1.0, 2.0 * opposite / count);

  std::sort(deltas.begin(), deltas.end());
  const double alpha = 1.0 - options.confidence;
  result.ci_low = Percentile(deltas, alpha / 2.0);
  result.ci_high = Percentile(deltas, 1.0 - alpha / 2.0);
  return result;
}

std::vector<EvalUtterance> ParseHypotheses(std::istream &in, const TokenizeOptions &options) {
  using Json = nlohmann::json;
  std::vector<EvalUtterance> out;
  std::unordered_set<std::string> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto fail = [&](const std::string &msg) {
      return DataError("hypothesis line " + std::to_string(line_no) + ": " + msg);
    };
    Json j;
    try {
      j = Json::parse(line);
    } catch (const Json::exception &) {
      throw fail("malformed JSON");
    }
    if (!j.is_object()) throw fail("record is not an object");
    EvalUtterance u;
    for (const char *key : {"utt_id", "ref", "hyp"}) {
      auto it = j.find(key);
      if (it == j.end() || !it->is_string()) throw fail(std::string("missing string ") + key);
    }
    u.utt_id = j["utt_id"].get<std::string>();
    if (!seen.insert(u.utt_id).second) throw fail("duplicate utt_id '" + u.utt_id + "'");
    u.ref_tokens = Tokenize(j["ref"].get<std::string>(), options);
    u.hyp_tokens = Tokenize(j["hyp"].get<std::string>(), options);
    if (auto g = j.find("groups"); g != j.end() && !g->is_null()) {
      if (!g->is_object()) throw fail("groups is not an object");
      for (const auto &[axis, label] : g->items()) {
        if (!label.is_string()) throw fail("group label for '" + axis + "' is not a string");
        u.groups[axis] = label.get<std::string>();
      }
    }
    out.push_back(std::move(u));
  }
  return out;
}

std::vector<EvalUtterance> LoadHypotheses(const std::string &path, const TokenizeOptions &options) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open hypothesis file '" + path + "'");
  return ParseHypotheses(in, options);
}

}  // namespace cohort
