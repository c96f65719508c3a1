// Copyright 2026 The dppfact Authors.
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


#include <set>

#include <gtest/gtest.h>

#include "dppfact/common.hpp"

namespace dpp {
namespace {

TEST(RngStream, SameSeedSameSequence) {
  RngStream a(42);
  RngStream b(42);
  for (int i = 0; i < 1000; ++i) ASSERT_EQ(a.uniform(), b.uniform());
  EXPECT_EQ(a.draws(), 1000U);
}

TEST(RngStream, UniformInUnitInterval) {
  RngStream rng(3);
  double sum = 0.0;
  for (int i = 0; i < 100000; ++i) {
    const double u = rng.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
  }
  EXPECT_NEAR(sum / 100000, 0.5, 0.01);
}

TEST(RngStream, OffsetSkipsDraws) {
  RngStream full(9);
  for (int i = 0; i < 17; ++i) full.uniform();
  RngStream skipped = RngStream::at_offset(9, 17);
  EXPECT_EQ(skipped.draws(), 17U);
  for (int i = 0; i < 10; ++i) ASSERT_EQ(full.uniform(), skipped.uniform());
}

TEST(RngStream, GaussianMoments) {
  RngStream rng(5);
  double sum = 0.0;
  double squares = 0.0;
  const int count = 200000;
  for (int i = 0; i < count; ++i) {
    const double g = rng.gaussian();
    sum += g;
    squares += g * g;
  }
  EXPECT_NEAR(sum / count, 0.0, 0.01);
  EXPECT_NEAR(squares / count, 1.0, 0.02);
}

TEST(SubsetMask, SetsOneBitPerIndex) {
  EXPECT_EQ(subset_mask({}), 0U);
  EXPECT_EQ(subset_mask({0, 2, 5}), 0b100101U);
}

TEST(Error, MessageStartsWithName) {
  const Error e(ErrorCode::kZeroPivot, "at 3");
  EXPECT_EQ(e.code(), ErrorCode::kZeroPivot);
  EXPECT_EQ(std::string(e.what()).rfind(to_string(ErrorCode::kZeroPivot), 0), 0U);
}

TEST(Error, NamesAreDistinct) {
  std::set<std::string> names;
  for (int c = 0; c <= static_cast<int>(ErrorCode::kIoError); ++c) {
    names.insert(to_string(static_cast<ErrorCode>(c)));
  }
  EXPECT_EQ(names.size(), static_cast<std::size_t>(ErrorCode::kIoError) + 1);
}

TEST(Sample, BitwiseEqualSeesPivotBits) {
  Sample a{{1}, -0.5, {0.25, 0.75}, {false, true}};
  Sample b = a;
  EXPECT_TRUE(bitwise_equal(a, b));
  b.pivots[0] = std::nextafter(0.25, 1.0);
  EXPECT_FALSE(bitwise_equal(a, b));
}

TEST(SamplerOptions, PrecisionDefaults) {
  const SamplerOptions options;
  EXPECT_EQ(options.tolerance<double>(), 1e-8);
  EXPECT_EQ(options.tolerance<float>(), 1e-4);
  EXPECT_EQ(SamplerOptions{0.5}.tolerance<double>(), 0.5);
}

}  // namespace
}  // namespace dpp
