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
#include <sstream>

#include <gtest/gtest.h>

#include "dppfact/matrix_market.hpp"
#include "support.hpp"

namespace dpp {
namespace {

using testing::Complex;

ErrorCode parse_code(const std::string& text) {
  std::istringstream in(text);
  try {
    read_matrix_market(in);
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kInvalidArgument;
}

template <Scalar S>
MarginalKernel<S> round_trip(const MarginalKernel<S>& kernel) {
  std::stringstream text;
  write_matrix_market(text, kernel);
  return to_marginal_kernel<S>(read_matrix_market(text));
}

TEST(MatrixMarket, DenseRoundTripIsExact) {
  for (std::uint64_t seed : testing::case_seeds(5, 71)) {
    const auto hermitian = testing::hermitian_case<Complex>(seed, 6);
    const auto general = testing::general_case<double>(seed, 5);
    const auto narrow = testing::hermitian_case<float>(seed, 4);
    EXPECT_EQ(round_trip(hermitian).matrix(), hermitian.matrix());
    EXPECT_TRUE(round_trip(hermitian).hermitian());
    EXPECT_EQ(round_trip(general).matrix(), general.matrix());
    EXPECT_FALSE(round_trip(general).hermitian());
    EXPECT_EQ(round_trip(narrow).matrix(), narrow.matrix());
  }
}

TEST(MatrixMarket, SparseRoundTripIsExact) {
  RngStream rng(3);
  const auto k = random_sparse_admissible<Complex>(20, 0.2, rng);
  std::stringstream text;
  write_matrix_market(text, k);
  const MatrixMarket market = read_matrix_market(text);
  EXPECT_TRUE(market.coordinate);
  EXPECT_EQ(market.symmetry, MarketSymmetry::kHermitian);
  const auto back = to_sparse_kernel<Complex>(market);
  EXPECT_EQ(back.col_ptr(), k.col_ptr());
  EXPECT_EQ(back.row_index(), k.row_index());
  EXPECT_EQ(back.values(), k.values());
}

TEST(MatrixMarket, ReadsSymmetricCoordinateWithComments) {
  std::istringstream in(
      "%%MatrixMarket matrix coordinate real symmetric\n"
      "% a comment\n"
      "\n"
      "3 3 4\n"
      "1 1 0.5\n"
      "2 2 0.5\n"
      "3 3 0.25\n"
      "2 1 -0.125\n");
  const MatrixMarket market = read_matrix_market(in);
  EXPECT_TRUE(market.hermitian());
  const auto dense = to_marginal_kernel<double>(market);
  EXPECT_TRUE(dense.hermitian());
  EXPECT_EQ(dense.matrix()(0, 1), -0.125);
  const auto sparse = to_sparse_kernel<double>(market);
  EXPECT_EQ(sparse.nnz(), 4);
}

TEST(MatrixMarket, GeneralArrayIsColumnMajor) {
  std::istringstream in("%%MatrixMarket matrix array real general\n2 2\n0.5\n0.1\n0.2\n0.5\n");
  const auto k = to_marginal_kernel<double>(read_matrix_market(in));
  EXPECT_EQ(k.matrix()(1, 0), 0.1);
  EXPECT_EQ(k.matrix()(0, 1), 0.2);
  EXPECT_FALSE(k.hermitian());
}

TEST(MatrixMarket, MalformedInputs) {
  EXPECT_EQ(parse_code(""), ErrorCode::kParseError);
  EXPECT_EQ(parse_code("%%MatrixMarket matrix array real\n"), ErrorCode::kParseError);
  EXPECT_EQ(parse_code("%%MatrixMarket matrix coordinate pattern general\n1 1 1\n1 1\n"),
            ErrorCode::kParseError);
  EXPECT_EQ(parse_code("%%MatrixMarket matrix array real general\n2 2\n1\n2\n3\n"), ErrorCode::kParseError);
  EXPECT_EQ(parse_code("%%MatrixMarket matrix coordinate real general\n2 2 1\n3 1 0.5\n"),
            ErrorCode::kParseError);
  EXPECT_EQ(parse_code("%%MatrixMarket matrix coordinate real general\n2 2 1\n1 1 abc\n"),
            ErrorCode::kParseError);
  EXPECT_EQ(parse_code("%%MatrixMarket matrix array real general\n1 1\n0.5\n0.7\n"), ErrorCode::kParseError);
}

TEST(MatrixMarket, ComplexEntriesRejectedForRealScalars) {
  std::istringstream in("%%MatrixMarket matrix array complex general\n1 1\n0.5 0.25\n");
  const auto market = read_matrix_market(in);
  EXPECT_THROW(to_marginal_kernel<double>(market), Error);
  EXPECT_THROW(to_sparse_kernel<Complex>(market), Error);
}

TEST(MatrixMarket, MissingFileIsIoError) {
  try {
    read_matrix_market_file("/nonexistent/kernel.mtx");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kIoError);
  }
}

TEST(SampleFile, RoundTrip) {
  const Sample s{{0, 4, 7}, -3.25, {}, {}};
  std::stringstream text;
  write_sample(text, s);
  EXPECT_EQ(text.str(), "loglik -3.25\n0 4 7\n");
  const SampleFile back = read_sample(text);
  EXPECT_EQ(back.kept, s.kept);
  EXPECT_EQ(back.log_likelihood, -3.25);
}

TEST(SampleFile, EmptySetAndInfinity) {
  Sample s;
  s.log_likelihood = -std::numeric_limits<double>::infinity();
  std::stringstream text;
  write_sample(text, s);
  const SampleFile back = read_sample(text);
  EXPECT_TRUE(back.kept.empty());
  EXPECT_EQ(back.log_likelihood, s.log_likelihood);
  std::istringstream bad("likelihood 3\n");
  EXPECT_THROW(read_sample(bad), Error);
}

}  // namespace
}  // namespace dpp
