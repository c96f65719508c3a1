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


#include <cmath>
#include <functional>
#include <map>
#include <set>

#include <Eigen/LU>
#include <gtest/gtest.h>

#include "dppfact/aztec.hpp"
#include "dppfact/sampling.hpp"
#include "support.hpp"

namespace dpp {
namespace {

using testing::Complex;

// Perfect matchings of the diamond by exhaustive search, as domino masks.
std::vector<std::uint64_t> all_tilings(const AztecDiamond& diamond) {
  std::vector<std::vector<Index>> by_white(diamond.squares_per_colour());
  for (Index e = 0; e < diamond.domino_count(); ++e) by_white[diamond.dominoes()[e].white].push_back(e);
  std::vector<std::uint64_t> tilings;
  std::vector<bool> used(diamond.squares_per_colour(), false);
  std::function<void(Index, std::uint64_t)> recurse = [&](Index w, std::uint64_t mask) {
    if (w == diamond.squares_per_colour()) {
      tilings.push_back(mask);
      return;
    }
    for (Index e : by_white[w]) {
      const Index b = diamond.dominoes()[e].black;
      if (used[b]) continue;
      used[b] = true;
      recurse(w + 1, mask | std::uint64_t{1} << e);
      used[b] = false;
    }
  };
  recurse(0, 0);
  return tilings;
}

TEST(AztecDiamond, Counts) {
  for (Index d = 1; d <= 6; ++d) {
    const AztecDiamond diamond(d);
    EXPECT_EQ(diamond.squares_per_colour(), d * (d + 1));
    EXPECT_EQ(diamond.domino_count(), 4 * d * d);
  }
  EXPECT_THROW(AztecDiamond(0), Error);
}

TEST(AztecDiamond, OrientationMatchesGeometry) {
  const AztecDiamond diamond(3);
  for (const Domino& d : diamond.dominoes()) {
    const auto w = diamond.whites()[d.white];
    const auto b = diamond.blacks()[d.black];
    EXPECT_EQ((w[0] + w[1]) % 2, 0);
    EXPECT_EQ(std::abs(w[0] - b[0]) + std::abs(w[1] - b[1]), 1);
    switch (d.orientation) {
      case TileOrientation::kRight: EXPECT_EQ(w[0] - b[0], 1); break;
      case TileOrientation::kLeft: EXPECT_EQ(w[0] - b[0], -1); break;
      case TileOrientation::kUp: EXPECT_EQ(w[1] - b[1], 1); break;
      case TileOrientation::kDown: EXPECT_EQ(w[1] - b[1], -1); break;
    }
    EXPECT_EQ(d.weight, w[1] == b[1] ? Complex(1.0) : Complex(0.0, 1.0));
  }
}

TEST(AztecDiamond, KasteleynDeterminantCountsTilings) {
  for (Index d = 1; d <= 3; ++d) {
    const AztecDiamond diamond(d);
    const double tilings = std::pow(2.0, d * (d + 1) / 2);
    EXPECT_EQ(static_cast<double>(all_tilings(diamond).size()), tilings);
    EXPECT_NEAR(std::abs(diamond.kasteleyn().fullPivLu().determinant()), tilings, 1e-9);
  }
}

TEST(AztecKernel, UniformOverTilings) {
  const AztecDiamond diamond(2);
  const auto kernel = aztec_kernel(diamond);
  EXPECT_FALSE(kernel.hermitian());
  const auto tilings = all_tilings(diamond);
  std::set<std::uint64_t> valid(tilings.begin(), tilings.end());
  // Every subset probability, through dense determinants.
  const Index n = kernel.order();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); mask += 97) {
    DenseMatrix<Complex> shifted = kernel.matrix();
    int excluded = 0;
    for (Index j = 0; j < n; ++j) {
      if (!(mask >> j & 1U)) {
        shifted(j, j) -= 1.0;
        ++excluded;
      }
    }
    const double p = (excluded % 2 == 0 ? 1.0 : -1.0) * shifted.fullPivLu().determinant().real();
    EXPECT_NEAR(p, valid.count(mask) ? 1.0 / 8.0 : 0.0, 1e-10);
  }
  for (std::uint64_t mask : tilings) {
    EXPECT_NEAR(log_likelihood_of(kernel, testing::mask_to_subset(mask, n)), -3.0 * std::log(2.0), 1e-10);
  }
}

TEST(AztecKernel, OrderOneHasTwoEquallyLikelyTilings) {
  const AztecDiamond diamond(1);
  const auto kernel = aztec_kernel(diamond);
  std::map<std::vector<Index>, int> seen;
  for (std::uint64_t seed = 0; seed < 2000; ++seed) {
    RngStream rng(seed);
    const Sample s = sample_unblocked(kernel, rng).sample;
    EXPECT_TRUE(decode_tiling(diamond, s.kept).valid);
    EXPECT_NEAR(s.log_likelihood, std::log(0.5), 1e-12);
    ++seen[s.kept];
  }
  ASSERT_EQ(seen.size(), 2U);
  for (const auto& [tiling, count] : seen) EXPECT_NEAR(count, 1000, 120);
}

TEST(AztecLogLikelihood, ClosedForm) {
  EXPECT_NEAR(aztec_log_likelihood(10), -38.1231, 1e-4);
  EXPECT_NEAR(aztec_log_likelihood(80), -2245.8, 0.05);
}

template <class T>
class KenyonByScalar : public ::testing::Test {};
using ComplexScalars = ::testing::Types<std::complex<float>, Complex>;
TYPED_TEST_SUITE(KenyonByScalar, ComplexScalars);

TYPED_TEST(KenyonByScalar, StructuredMatchesDense) {
  const bool single = std::is_same_v<TypeParam, std::complex<float>>;
  const SamplerOptions options = single ? SamplerOptions::lenient() : SamplerOptions{};
  for (Index d : {1, 2, 4, 7}) {
    const AztecDiamond diamond(d);
    const auto dense = aztec_kernel(diamond).cast<TypeParam>();
    const auto inverse = kasteleyn_inverse(diamond);
    for (Index block : {1, 5, 256}) {
      for (std::uint64_t seed : {3U, 4U}) {
        RngStream a(seed);
        RngStream b(seed);
        const Sample reference = sample_nonhermitian_unblocked(dense, a, options).sample;
        const Sample structured = sample_kenyon<TypeParam>(diamond, inverse, b, {block, options});
        EXPECT_EQ(reference.kept, structured.kept) << "d " << d << " block " << block;
        EXPECT_EQ(a.draws(), b.draws());
        if (!single) {
          EXPECT_NEAR(reference.log_likelihood, structured.log_likelihood, 1e-9);
          EXPECT_TRUE(decode_tiling(diamond, structured.kept).valid);
          EXPECT_NEAR(structured.log_likelihood, aztec_log_likelihood(d), 1e-8);
        }
      }
    }
  }
}

// At this order |G| reaches ~4e14 and a plain inverse already loses the
// small entries; every white square must still be covered with probability 1.
TEST(KasteleynInverse, AccurateOnLargeDiamond) {
  const AztecDiamond diamond(56);
  const DenseMatrix<Complex> g = kasteleyn_inverse(diamond);
  EXPECT_GT(g.cwiseAbs().maxCoeff(), 1e10);
  std::vector<Complex> cover(diamond.squares_per_colour(), 0.0);
  for (const Domino& d : diamond.dominoes()) {
    const Complex p = d.weight * g(d.black, d.white);
    EXPECT_NEAR(p.imag(), 0.0, 1e-10);
    EXPECT_GE(p.real(), -1e-10);
    EXPECT_LE(p.real(), 1.0 + 1e-10);
    cover[d.white] += p;
  }
  for (const Complex& c : cover) EXPECT_NEAR(std::abs(c - 1.0), 0.0, 1e-10);
}

TEST(DecodeTiling, DetectsDefects) {
  const AztecDiamond diamond(3);
  RngStream rng(1);
  const Sample s = sample_kenyon<Complex>(diamond, kasteleyn_inverse(diamond), rng);
  const TilingReport good = decode_tiling(diamond, s.kept);
  ASSERT_TRUE(good.valid);
  Index total = 0;
  for (Index c : good.orientation_counts) total += c;
  EXPECT_EQ(total, diamond.squares_per_colour());

  std::vector<Index> missing(s.kept.begin() + 1, s.kept.end());
  const TilingReport hole = decode_tiling(diamond, missing);
  EXPECT_FALSE(hole.valid);
  EXPECT_EQ(hole.uncovered, 2);

  std::vector<Index> extra = s.kept;
  for (Index e = 0; e < diamond.domino_count(); ++e) {
    if (!std::binary_search(s.kept.begin(), s.kept.end(), e)) {
      extra.push_back(e);
      break;
    }
  }
  std::sort(extra.begin(), extra.end());
  EXPECT_GT(decode_tiling(diamond, extra).overcovered, 0);
}

TEST(Kenyon, RejectsBadInputs) {
  const AztecDiamond diamond(2);
  RngStream rng(1);
  EXPECT_THROW(sample_kenyon<Complex>(diamond, DenseMatrix<Complex>::Zero(3, 3), rng), Error);
  EXPECT_THROW(sample_kenyon<Complex>(diamond, kasteleyn_inverse(diamond), rng, {0, {}}), Error);
}

}  // namespace
}  // namespace dpp
