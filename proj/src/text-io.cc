// src/text-io.cc

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

#include "cohort/text-io.h"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

#include "cohort/errors.h"

namespace cohort {

std::string FormatReal(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void WriteKeyedRow(std::ostream &out, const std::string &key, const double *values,
                   Eigen::Index count) {
  out << key;
  for (Eigen::Index i = 0; i < count; ++i) out << ' ' << FormatReal(values[i]);
  out << '\n';
}

void WriteKeyedRow(std::ostream &out, const std::string &key, const Vector &values) {
  WriteKeyedRow(out, key, values.data(), values.size());
}

namespace {

std::vector<std::string> NextFields(std::istream &in, const std::string &key) {
  std::string line;
  if (!std::getline(in, line)) throw DataError("model file truncated before '" + key + "'");
  std::istringstream ss(line);
  std::vector<std::string> fields;
  std::string f;
  while (ss >> f) fields.push_back(f);
  if (fields.empty() || fields[0] != key)
    throw DataError("model file: expected '" + key + "', got '" + line + "'");
  fields.erase(fields.begin());
  return fields;
}

double ParseReal(const std::string &s) {
  errno = 0;
  char *end = nullptr;
  double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0' || !std::isfinite(v))
    throw DataError("model file: bad number '" + s + "'");
  return v;
}

}  // namespace

std::vector<double> ReadKeyedRow(std::istream &in, const std::string &key) {
  std::vector<double> out;
  for (const std::string &f : NextFields(in, key)) out.push_back(ParseReal(f));
  return out;
}

long long ReadKeyedInt(std::istream &in, const std::string &key) {
  auto fields = NextFields(in, key);
  if (fields.size() != 1) throw DataError("model file: '" + key + "' needs one value");
  char *end = nullptr;
  long long v = std::strtoll(fields[0].c_str(), &end, 10);
  if (*end != '\0') throw DataError("model file: bad integer '" + fields[0] + "'");
  return v;
}

std::uint64_t ReadKeyedU64(std::istream &in, const std::string &key) {
  auto fields = NextFields(in, key);
  if (fields.size() != 1 || fields[0].empty() || fields[0][0] == '-')
    throw DataError("model file: '" + key + "' needs one unsigned value");
  char *end = nullptr;
  std::uint64_t v = std::strtoull(fields[0].c_str(), &end, 10);
  if (*end != '\0') throw DataError("model file: bad integer '" + fields[0] + "'");
  return v;
}

void ExpectHeader(std::istream &in, const std::string &name, int version) {
  if (ReadKeyedInt(in, name) != version)
    throw DataError("unsupported " + name + " version");
}

}  // namespace cohort
