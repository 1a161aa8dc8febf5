// include/cohort/fairness-eval.h

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

#ifndef COHORT_FAIRNESS_EVAL_H_
#define COHORT_FAIRNESS_EVAL_H_

#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cohort {

struct TokenizeOptions {
  bool case_fold = true;
  bool strip_punctuation = true;  // leading/trailing only
};

/// Whitespace split, then per-token case folding and edge-punctuation
/// stripping. Tokens left empty are dropped.
std::vector<std::string> Tokenize(std::string_view text, const TokenizeOptions &options = {});

struct EvalUtterance {
  std::string utt_id;
  std::vector<std::string> ref_tokens;
  std::vector<std::string> hyp_tokens;
  std::map<std::string, std::string> groups;  // axis -> label
};

struct AlignmentStats {
  long long substitutions = 0;
  long long deletions = 0;
  long long insertions = 0;
  long long n_ref = 0;

  long long Errors() const { return substitutions + deletions + insertions; }
};

/// Unit-cost Levenshtein alignment. Among minimal alignments the backtrace
/// prefers substitution (or match), then deletion, then insertion.
AlignmentStats EditAlign(std::span<const std::string> ref, std::span<const std::string> hyp);

/// Pooled WER: sum of errors over sum of reference tokens, as a fraction.
/// Throws std::invalid_argument if there are no reference tokens.
double CorpusWer(std::span<const EvalUtterance> utterances);

/// 100 * (baseline - treatment) / baseline; positive means the treatment
/// improved. Inputs in WER percent.
double RelativeDiff(double baseline_wer, double treatment_wer);

/// Fixed two-decimal string truncated toward zero, e.g. 4.8275 -> "4.82".
std::string FormatTruncated(double value, int decimals = 2);

struct GroupRow {
  std::string axis;
  std::string label;
  double baseline_wer = 0.0;   // percent
  double treatment_wer = 0.0;  // percent
  double rel_diff = 0.0;       // percent
  long long n_utts = 0;
};

struct GroupReport {
  std::vector<GroupRow> rows;
  // Utterances excluded from an axis because they lack that label.
  std::map<std::string, long long> missing_axis;
};

/// One row per (axis, label) with pooled WER for both systems. Rows are in
/// axis order, then order of first appearance of the label. Throws
/// DataError when the two systems do not cover the same utterances with the
/// same references and groups.
GroupReport BuildGroupReport(std::span<const EvalUtterance> baseline,
                             std::span<const EvalUtterance> treatment,
                             const std::vector<std::string> &axes);

/// "axis,label,baseline_wer,cluster_wer,rel_diff,n_utts"; WERs at two
/// decimals, rel_diff truncated to two decimals.
void WriteGroupReport(const GroupReport &report, std::ostream &out);

struct BootstrapOptions {
  int resamples = 1000;
  std::uint64_t seed = 0;
  double confidence = 0.95;
  int num_threads = 1;
};

/// Deltas are baseline WER minus treatment WER, as fractions.
struct BootstrapResult {
  double delta = 0.0;       // on the full sample
  double mean_delta = 0.0;  // over resamples
  double ci_low = 0.0;
  double ci_high = 0.0;
  double p_value = 1.0;
};

/// Paired percentile bootstrap over utterances. Resample r draws its
/// indices from a generator seeded by DeriveSeed(seed, r), so results are
/// identical for any thread count. The p-value is twice the fraction of
/// resamples whose delta has the opposite sign of the point estimate (ties
/// count one half), capped at 1.
BootstrapResult PairedBootstrap(std::span<const EvalUtterance> baseline,
                                std::span<const EvalUtterance> treatment,
                                const BootstrapOptions &options = {});

/// Line-delimited JSON with utt_id, ref, hyp and optional groups.
std::vector<EvalUtterance> LoadHypotheses(const std::string &path,
                                          const TokenizeOptions &options = {});
std::vector<EvalUtterance> ParseHypotheses(std::istream &in, const TokenizeOptions &options = {});

}  // namespace cohort

#endif  // COHORT_FAIRNESS_EVAL_H_
