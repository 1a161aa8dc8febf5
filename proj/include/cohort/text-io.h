// include/cohort/text-io.h

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

#ifndef COHORT_TEXT_IO_H_
#define COHORT_TEXT_IO_H_

#include <cstdint>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "cohort/corpus.h"

namespace cohort {

// Helpers for the keyed text model formats. Every real is written with 17
// significant digits so values survive a write/read cycle bit-exactly.

std::string FormatReal(double v);

void WriteKeyedRow(std::ostream &out, const std::string &key, const double *values,
                   Eigen::Index count);
void WriteKeyedRow(std::ostream &out, const std::string &key, const Vector &values);

/// Reads one line, checks its key and returns the remaining numeric fields.
/// Throws DataError on a key mismatch or unparsable value.
std::vector<double> ReadKeyedRow(std::istream &in, const std::string &key);
/// Single integer value after `key`.
long long ReadKeyedInt(std::istream &in, const std::string &key);
std::uint64_t ReadKeyedU64(std::istream &in, const std::string &key);
/// Verifies the magic header line "<name> <version>".
void ExpectHeader(std::istream &in, const std::string &name, int version);

}  // namespace cohort

#endif  // COHORT_TEXT_IO_H_
