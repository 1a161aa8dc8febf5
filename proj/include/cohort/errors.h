// include/cohort/errors.h

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

#ifndef COHORT_ERRORS_H_
#define COHORT_ERRORS_H_

#include <stdexcept>
#include <string>

namespace cohort {

// Error taxonomy. The command-line driver maps these onto exit codes:
// UsageError -> 1, DataError -> 2, NumericError -> 3.

/// Bad flags, config values or an unknown axis name.
class UsageError : public std::runtime_error {
 public:
  explicit UsageError(const std::string &what) : std::runtime_error(what) {}
};

/// Malformed or inconsistent input files (missing path, bad line, duplicate
/// id, dimension mismatch, mismatched utterance sets).
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string &what) : std::runtime_error(what) {}
};

/// Numerically infeasible requests: too few points, zero variance, k > n.
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string &what) : std::runtime_error(what) {}
};

}  // namespace cohort

#endif  // COHORT_ERRORS_H_
