// tests/conditioning-test.cc

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

#include <sstream>

#include "cohort/conditioning.h"
#include "doctest.h"

using namespace cohort;

namespace {

std::vector<ClusterId> Cycle(int n, int k) {
  std::vector<ClusterId> ids;
  for (int i = 0; i < n; ++i) ids.push_back(ClusterId{i % k});
  return ids;
}

}  // namespace

TEST_CASE("masking extremes") {
  auto ids = Cycle(1000, 7);
  CHECK(ApplyMasking(ids, 7, {0.0, 3}) == ids);
  for (ClusterId c : ApplyMasking(ids, 7, {1.0, 3})) CHECK(c.IsUnknown(7));
}

TEST_CASE("masking rate") {
  CHECK(kDefaultUnknownProbability == 0.1);
  auto ids = Cycle(100000, 50);
  auto masked = ApplyMasking(ids, 50, {0.1, 12345});
  int unknown = 0;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (masked[i].IsUnknown(50))
      ++unknown;
    else
      CHECK(masked[i] == ids[i]);
  }
  const double rate = unknown / 100000.0;
  CHECK(rate >= 0.097);
  CHECK(rate <= 0.103);
}

TEST_CASE("masking decision depends only on seed and position") {
  auto a = Cycle(300, 5);
  std::vector<ClusterId> b(300, ClusterId{4});
  auto ma = ApplyMasking(a, 5, {0.3, 77});
  auto mb = ApplyMasking(b, 5, {0.3, 77});
  for (int i = 0; i < 300; ++i) CHECK(ma[i].IsUnknown(5) == mb[i].IsUnknown(5));
  // A prefix masks the same way as the full sequence.
  auto prefix = ApplyMasking(std::span<const ClusterId>(a).first(100), 5, {0.3, 77});
  for (int i = 0; i < 100; ++i) CHECK(prefix[i] == ma[i]);
  CHECK(ApplyMasking(a, 5, {0.3, 78}) != ma);
}

TEST_CASE("masking rejects bad input") {
  std::vector<ClusterId> ids = {ClusterId{0}, ClusterId{5}};
  CHECK_THROWS_AS(ApplyMasking(ids, 5, {0.1, 0}), std::invalid_argument);
  std::vector<ClusterId> ok = {ClusterId{0}};
  CHECK_THROWS_AS(ApplyMasking(ok, 5, {-0.1, 0}), std::invalid_argument);
  CHECK_THROWS_AS(ApplyMasking(ok, 5, {1.1, 0}), std::invalid_argument);
}

TEST_CASE("one-hot encoding") {
  ConditioningFeature f = OneHot(ClusterId{2}, 4);
  CHECK(f.onehot == std::vector<double>{0, 0, 1, 0, 0});
  CHECK(f.NumClusters() == 4);

  ConditioningFeature unk = OneHot(ClusterId::Unknown(50), 50);
  CHECK(unk.onehot.size() == 51);
  CHECK(unk.onehot[50] == 1.0);
  double sum = 0;
  for (double v : unk.onehot) sum += v;
  CHECK(sum == 1.0);

  CHECK(OneHot(ClusterId{1}, 2).onehot == std::vector<double>{0, 1, 0});
  CHECK(InferenceFeature(2).onehot == std::vector<double>{0, 0, 1});
  CHECK(InferenceFeature(50).onehot == OneHot(ClusterId::Unknown(50), 50).onehot);

  for (int c = 0; c <= 9; ++c) CHECK(OneHot(ClusterId{c}, 9).ArgMax().value == c);

  CHECK_THROWS_AS(OneHot(ClusterId{6}, 5), std::invalid_argument);
  CHECK_THROWS_AS(OneHot(ClusterId{-1}, 5), std::invalid_argument);
}

TEST_CASE("feature rows") {
  std::ostringstream out;
  WriteFeatureHeader(out, 3);
  WriteFeatureRow(out, "u1", OneHot(ClusterId{1}, 3));
  WriteFeatureRow(out, "u2", InferenceFeature(3));
  CHECK(out.str() == "utt_id,k=3\nu1,0,1,0,0\nu2,0,0,0,1\n");
}
