// Copyright 2026 The ragmia Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ragmia/rng.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "ragmia/errors.h"

namespace ragmia {
namespace {

TEST(Rng, SameSeedSameSequence) {
  Rng a(42), b(42);
  for (int i = 0; i < 1000; ++i) {
    ASSERT_EQ(a.next(), b.next());
  }
}

TEST(Rng, DifferentSeedsDiverge) {
  Rng a(1), b(2);
  int differs = 0;
  for (int i = 0; i < 64; ++i) {
    if (a.next() != b.next()) ++differs;
  }
  EXPECT_GT(differs, 60);
}

TEST(Rng, BelowStaysInRangeAndCoversAll) {
  Rng rng(7);
  std::set<uint64_t> seen;
  for (int i = 0; i < 2000; ++i) {
    const uint64_t v = rng.below(7);
    ASSERT_LT(v, 7u);
    seen.insert(v);
  }
  EXPECT_EQ(seen.size(), 7u);
}

TEST(Rng, BelowDegenerateBoundsReturnZero) {
  Rng rng(7);
  EXPECT_EQ(rng.below(0), 0u);
  EXPECT_EQ(rng.below(1), 0u);
}

TEST(Rng, IntInHitsBothEndsInclusive) {
  Rng rng(11);
  bool lo = false, hi = false;
  for (int i = 0; i < 2000; ++i) {
    const int64_t v = rng.int_in(-3, 3);
    ASSERT_GE(v, -3);
    ASSERT_LE(v, 3);
    lo = lo || v == -3;
    hi = hi || v == 3;
  }
  EXPECT_TRUE(lo);
  EXPECT_TRUE(hi);
}

TEST(Rng, UnitIsHalfOpen) {
  Rng rng(13);
  double min = 1.0, max = -1.0;
  for (int i = 0; i < 100000; ++i) {
    const double u = rng.unit();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    min = std::min(min, u);
    max = std::max(max, u);
  }
  EXPECT_LT(min, 0.001);
  EXPECT_GT(max, 0.999);
}

TEST(Rng, NormalMomentsMatchStandardGaussian) {
  Rng rng(17);
  const int n = 200000;
  double sum = 0.0, sumsq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = rng.normal();
    sum += x;
    sumsq += x * x;
  }
  const double mean = sum / n;
  const double var = sumsq / n - mean * mean;
  EXPECT_NEAR(mean, 0.0, 0.02);
  EXPECT_NEAR(var, 1.0, 0.03);
}

TEST(Rng, ShuffleIsAPermutation) {
  Rng rng(19);
  std::vector<int> v(100);
  for (int i = 0; i < 100; ++i) v[static_cast<size_t>(i)] = i;
  std::vector<int> shuffled = v;
  rng.shuffle(shuffled);
  EXPECT_NE(shuffled, v);
  std::sort(shuffled.begin(), shuffled.end());
  EXPECT_EQ(shuffled, v);
}

TEST(Rng, SampleIndicesDistinctAndInRange) {
  Rng rng(23);
  for (int trial = 0; trial < 50; ++trial) {
    const auto picks = rng.sample_indices(40, 12);
    ASSERT_EQ(picks.size(), 12u);
    std::set<size_t> uniq(picks.begin(), picks.end());
    EXPECT_EQ(uniq.size(), 12u);
    for (size_t p : picks) EXPECT_LT(p, 40u);
  }
}

TEST(Rng, SampleIndicesFullDrawIsAPermutation) {
  Rng rng(29);
  auto picks = rng.sample_indices(10, 10);
  std::sort(picks.begin(), picks.end());
  for (size_t i = 0; i < 10; ++i) EXPECT_EQ(picks[i], i);
}

TEST(Rng, SampleIndicesRejectsOversizedDraw) {
  Rng rng(31);
  EXPECT_THROW(rng.sample_indices(5, 6), InputError);
}

TEST(Mix, LabelDerivationSeparatesStages) {
  EXPECT_NE(derive_seed(1729, "corpus"), derive_seed(1729, "split"));
  EXPECT_NE(derive_seed(1729, "corpus"), derive_seed(1730, "corpus"));
  EXPECT_EQ(derive_seed(1729, "eval"), derive_seed(1729, "eval"));
}

TEST(Mix, TwoWordMixIsOrderSensitive) {
  EXPECT_NE(mix64(1, 2), mix64(2, 1));
  EXPECT_NE(mix64(0), mix64(1));
}

TEST(Mix, HashLabelIsStableAcrossCalls) {
  const uint64_t h = hash_label("perturb");
  EXPECT_EQ(h, hash_label("perturb"));
  EXPECT_NE(h, hash_label("perturbs"));
}

}  // namespace
}  // namespace ragmia
