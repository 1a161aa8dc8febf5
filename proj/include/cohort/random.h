// include/cohort/random.h

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

#ifndef COHORT_RANDOM_H_
#define COHORT_RANDOM_H_

#include <cstdint>
#include <random>

namespace cohort {

/// SplitMix64 finalizer. Bijective 64-bit mix.
std::uint64_t Mix64(std::uint64_t x);

/// Deterministic child seed for (parent, index). Used wherever a stage
/// needs an independent stream: per-k elbow fits, per-cluster hierarchical
/// fits, per-epoch masking, per-resample bootstrap draws.
std::uint64_t DeriveSeed(std::uint64_t parent, std::uint64_t index);

/// Counter-based uniform in [0, 1): a pure function of (seed, counter).
double CounterUniform(std::uint64_t seed, std::uint64_t counter);

/// Sequential generator with a portable output sequence. The std
/// distributions are implementation-defined, so uniform and normal draws
/// are derived here directly from mt19937_64 bits.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(Mix64(seed)) {}

  /// Uniform in [0, 1) with 53 random bits.
  double Uniform();
  /// Uniform integer in [0, n). n must be positive.
  std::uint64_t UniformIndex(std::uint64_t n);
  /// Standard normal (Box-Muller, one value per call).
  double Normal();

 private:
  std::mt19937_64 engine_;
};

}  // namespace cohort

#endif  // COHORT_RANDOM_H_
