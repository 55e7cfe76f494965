//
// Copyright 2026 The skipseq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//


#include "skipseq/rng.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <vector>

namespace skipseq {
namespace {

TEST(RngTest, Deterministic) {
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a.NextU64(), b.NextU64());
}

TEST(RngTest, UniformRange) {
  Rng r(1);
  double sum = 0.0;
  for (int i = 0; i < 100000; ++i) {
    const double u = r.Uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
  }
  EXPECT_NEAR(sum / 100000, 0.5, 0.005);
}

TEST(RngTest, IndexCoversRange) {
  Rng r(3);
  std::vector<int> hits(7, 0);
  for (int i = 0; i < 7000; ++i) ++hits[r.Index(7)];
  for (int h : hits) EXPECT_GT(h, 800);
}

TEST(RngTest, BinomialMean) {
  Rng r(5);
  double sum = 0.0;
  for (int i = 0; i < 2000; ++i) sum += static_cast<double>(r.Binomial(100, 0.3));
  EXPECT_NEAR(sum / 2000, 30.0, 0.5);
  EXPECT_EQ(r.Binomial(10, 0.0), 0u);
  EXPECT_EQ(r.Binomial(10, 1.0), 10u);
}

TEST(RngTest, ShuffleIsPermutation) {
  Rng r(9);
  std::vector<int> v(50);
  std::iota(v.begin(), v.end(), 0);
  auto w = v;
  r.Shuffle(std::span<int>(w));
  EXPECT_NE(v, w);
  std::sort(w.begin(), w.end());
  EXPECT_EQ(v, w);
}

TEST(RngTest, DeriveSeparatesStreams) {
  EXPECT_NE(Rng::Derive(1, 1), Rng::Derive(1, 2));
  EXPECT_NE(Rng::Derive(1, 1), Rng::Derive(2, 1));
  EXPECT_EQ(Rng::Derive(7, 3), Rng::Derive(7, 3));
}

}  // namespace
}  // namespace skipseq
