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

// Brute-force ground truth: exact subset probabilities by enumeration,
// Brunel's admissibility criterion, and Pearson chi-square comparison of a
// sampler against an exact distribution.

#ifndef DPPFACT_ORACLE_HPP_
#define DPPFACT_ORACLE_HPP_

#include <cstdint>
#include <functional>
#include <string>
#include <unordered_map>

#include "dppfact/kernel.hpp"

namespace dpp {

inline constexpr Index kMaxEnumerationOrder = 20;

/// P[Y = subset] for every subset, indexed by bitmask.
struct SubsetDistribution {
  Index n = 0;
  std::vector<double> probability;
  /// Most negative value before clamping to zero.
  double most_negative = 0.0;

  double operator[](std::uint64_t mask) const { return probability[mask]; }
  double of(const std::vector<Index>& subset) const { return probability[subset_mask(subset)]; }
  double total() const;
  /// P[j in Y].
  double marginal(Index j) const;
};

/// P[Y] = (-1)^{|Y^C|} det(K - 1_{Y^C}); values within -1e-10 of zero are
/// clamped. Throws TooLarge for n > 20.
template <Scalar S>
SubsetDistribution enumerate_probabilities(const MarginalKernel<S>& kernel);

struct AdmissibilityReport {
  bool admissible = true;
  /// Bitmask J minimising (-1)^{|J|} det(K - 1_J), and that value.
  std::uint64_t worst_subset = 0;
  double worst_value = 0.0;
};

/// Admissible iff every (-1)^{|J|} det(K - 1_J) >= -1e-10. Throws TooLarge.
template <Scalar S>
AdmissibilityReport check_admissibility(const MarginalKernel<S>& kernel);

struct ChiSquareReport {
  double statistic = 0.0;
  Index dof = 0;
  double critical = 0.0;
  double p_value = 1.0;
  double significance = 1e-3;
  Index trials = 0;
  Index bins = 0;
  /// Observations of subsets whose exact probability is <= 1e-12.
  Index impossible = 0;
  bool passed = false;

  std::string to_text() const;
  std::string to_json() const;
};

/// Pearson statistic of observed subset counts against `expected`. Subsets
/// with expected count below 5 are pooled into one tail bin (folded into
/// the smallest regular bin if the pool itself stays below 5). Any
/// observation of an impossible subset fails the test outright.
ChiSquareReport chi_square_from_counts(const std::unordered_map<std::uint64_t, Index>& observed,
                                       const SubsetDistribution& expected, Index trials,
                                       double significance = 1e-3);

using SubsetSampler = std::function<std::vector<Index>(RngStream&)>;

/// Draws `trials` subsets from one stream seeded with `seed`.
ChiSquareReport chi_square_compare(const SubsetSampler& sampler, const SubsetDistribution& expected,
                                   Index trials, std::uint64_t seed, double significance = 1e-3);

template <Scalar S>
ChiSquareReport chi_square_compare(const SubsetSampler& sampler, const MarginalKernel<S>& kernel,
                                   Index trials, std::uint64_t seed, double significance = 1e-3) {
  return chi_square_compare(sampler, enumerate_probabilities(kernel), trials, seed, significance);
}

}  // namespace dpp

#endif  // DPPFACT_ORACLE_HPP_
