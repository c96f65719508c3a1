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


// Brute-force reference values and seeded case generators shared by the unit
// tests. Nothing here calls the factorization code under test.

#ifndef DPPFACT_TESTS_SUPPORT_HPP_
#define DPPFACT_TESTS_SUPPORT_HPP_

#include <algorithm>
#include <bit>
#include <complex>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "dppfact/builders.hpp"
#include "dppfact/kernel.hpp"

namespace dpp::testing {

using Complex = std::complex<double>;

/// Determinant by the permutation expansion. Fine up to order 8.
template <Scalar S>
Complex leibniz_det(const DenseMatrix<S>& a) {
  const Index n = a.rows();
  std::vector<Index> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  Complex total = 0.0;
  do {
    int inversions = 0;
    for (Index i = 0; i < n; ++i) {
      for (Index j = i + 1; j < n; ++j) inversions += perm[i] > perm[j] ? 1 : 0;
    }
    Complex term = inversions % 2 == 0 ? 1.0 : -1.0;
    for (Index i = 0; i < n; ++i) term *= Complex(a(i, perm[i]));
    total += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

/// P(Y = mask) = (-1)^{|complement|} det(K - 1_complement).
template <Scalar S>
double brute_probability(const DenseMatrix<S>& k, std::uint64_t mask) {
  DenseMatrix<Complex> shifted = k.template cast<Complex>();
  int excluded = 0;
  for (Index j = 0; j < k.rows(); ++j) {
    if (!(mask >> j & 1U)) {
      shifted(j, j) -= 1.0;
      ++excluded;
    }
  }
  const double det = leibniz_det(shifted).real();
  return excluded % 2 == 0 ? det : -det;
}

/// Deterministic seeds for property loops.
inline std::vector<std::uint64_t> case_seeds(int count, std::uint64_t base = 1000) {
  std::vector<std::uint64_t> seeds;
  std::mt19937_64 engine(base);
  for (int i = 0; i < count; ++i) seeds.push_back(engine() % 1000003);
  return seeds;
}

/// Order drawn uniformly from [lo, hi] for a given case seed.
inline Index case_order(std::uint64_t seed, Index lo, Index hi) {
  std::mt19937_64 engine(seed ^ 0x9e3779b97f4a7c15ULL);
  return lo + static_cast<Index>(engine() % static_cast<std::uint64_t>(hi - lo + 1));
}

template <Scalar S>
MarginalKernel<S> hermitian_case(std::uint64_t seed, Index n) {
  RngStream rng(seed);
  return random_admissible_hermitian<S>(n, random_spectrum(n, rng), rng);
}

template <Scalar S>
MarginalKernel<S> general_case(std::uint64_t seed, Index n) {
  RngStream rng(seed);
  return random_admissible_nonhermitian<S>(n, rng);
}

inline std::vector<Index> mask_to_subset(std::uint64_t mask, Index n) {
  std::vector<Index> subset;
  for (Index j = 0; j < n; ++j) {
    if (mask >> j & 1U) subset.push_back(j);
  }
  return subset;
}

}  // namespace dpp::testing

#endif  // DPPFACT_TESTS_SUPPORT_HPP_
