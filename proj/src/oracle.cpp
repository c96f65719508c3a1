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

#include "dppfact/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include <Eigen/LU>
#include <boost/math/distributions/chi_squared.hpp>
#include <fmt/format.h>

#include "detail/instantiate.hpp"
#include "json.hpp"

namespace dpp {

namespace {

constexpr double kClampTolerance = 1e-10;
constexpr double kImpossible = 1e-12;
constexpr double kMinExpected = 5.0;

// Entry J holds (-1)^{|J|} det(K - 1_J), computed in double precision.
template <Scalar S>
std::vector<double> signed_determinants(const MarginalKernel<S>& kernel) {
  const Index n = kernel.order();
  if (n > kMaxEnumerationOrder) {
    throw Error(ErrorCode::kTooLarge, fmt::format("cannot enumerate 2^{} subsets", n));
  }
  using Wide = std::conditional_t<kIsComplex<S>, std::complex<double>, double>;
  const DenseMatrix<Wide> base = kernel.matrix().template cast<Wide>();
  const std::uint64_t count = std::uint64_t{1} << n;
  std::vector<double> values(count);
  DenseMatrix<Wide> shifted(n, n);
  for (std::uint64_t mask = 0; mask < count; ++mask) {
    shifted = base;
    for (Index j = 0; j < n; ++j) {
      if (mask >> j & 1U) shifted(j, j) -= Wide(1);
    }
    const double det = n == 0 ? 1.0 : static_cast<double>(real_part(shifted.partialPivLu().determinant()));
    values[mask] = std::popcount(mask) % 2 == 0 ? det : -det;
  }
  return values;
}

}  // namespace

double SubsetDistribution::total() const {
  double sum = 0.0;
  for (double p : probability) sum += p;
  return sum;
}

double SubsetDistribution::marginal(Index j) const {
  double sum = 0.0;
  for (std::uint64_t mask = 0; mask < probability.size(); ++mask) {
    if (mask >> j & 1U) sum += probability[mask];
  }
  return sum;
}

template <Scalar S>
SubsetDistribution enumerate_probabilities(const MarginalKernel<S>& kernel) {
  const std::vector<double> signed_dets = signed_determinants(kernel);
  SubsetDistribution dist;
  dist.n = kernel.order();
  const std::uint64_t full = signed_dets.size() - 1;
  dist.probability.resize(signed_dets.size());
  for (std::uint64_t mask = 0; mask <= full; ++mask) {
    const double p = signed_dets[full & ~mask];
    dist.most_negative = std::min(dist.most_negative, p);
    dist.probability[mask] = p >= -kClampTolerance ? std::max(p, 0.0) : p;
  }
  return dist;
}

template <Scalar S>
AdmissibilityReport check_admissibility(const MarginalKernel<S>& kernel) {
  const std::vector<double> signed_dets = signed_determinants(kernel);
  AdmissibilityReport report;
  report.worst_value = signed_dets.empty() ? 0.0 : signed_dets[0];
  for (std::uint64_t mask = 0; mask < signed_dets.size(); ++mask) {
    if (signed_dets[mask] < report.worst_value) {
      report.worst_value = signed_dets[mask];
      report.worst_subset = mask;
    }
  }
  report.admissible = report.worst_value >= -kClampTolerance;
  return report;
}

ChiSquareReport chi_square_from_counts(const std::unordered_map<std::uint64_t, Index>& observed,
                                       const SubsetDistribution& expected, Index trials, double significance) {
  ChiSquareReport report;
  report.trials = trials;
  report.significance = significance;
  const double n = static_cast<double>(trials);

  for (const auto& [mask, count] : observed) {
    if (mask >= expected.probability.size() || expected.probability[mask] <= kImpossible) {
      report.impossible += count;
    }
  }

  struct Bin {
    double expected = 0.0;
    double observed = 0.0;
  };
  std::vector<Bin> bins;
  Bin tail;
  for (std::uint64_t mask = 0; mask < expected.probability.size(); ++mask) {
    const double e = n * std::max(expected.probability[mask], 0.0);
    const auto it = observed.find(mask);
    const double o = it == observed.end() ? 0.0 : static_cast<double>(it->second);
    if (e >= kMinExpected) {
      bins.push_back({e, o});
    } else {
      tail.expected += e;
      tail.observed += o;
    }
  }
  if (tail.expected >= kMinExpected || bins.empty()) {
    bins.push_back(tail);
  } else if (tail.expected > 0.0 || tail.observed > 0.0) {
    auto smallest = std::min_element(bins.begin(), bins.end(),
                                     [](const Bin& a, const Bin& b) { return a.expected < b.expected; });
    smallest->expected += tail.expected;
    smallest->observed += tail.observed;
  }

  report.bins = static_cast<Index>(bins.size());
  for (const Bin& bin : bins) {
    if (bin.expected > 0.0) {
      const double diff = bin.observed - bin.expected;
      report.statistic += diff * diff / bin.expected;
    }
  }
  report.dof = report.bins - 1;
  if (report.dof >= 1) {
    const boost::math::chi_squared dist(static_cast<double>(report.dof));
    report.critical = boost::math::quantile(boost::math::complement(dist, significance));
    report.p_value = boost::math::cdf(boost::math::complement(dist, report.statistic));
    report.passed = report.statistic <= report.critical;
  } else {
    report.passed = true;
  }
  if (report.impossible > 0) report.passed = false;
  return report;
}

ChiSquareReport chi_square_compare(const SubsetSampler& sampler, const SubsetDistribution& expected,
                                   Index trials, std::uint64_t seed, double significance) {
  RngStream rng(seed);
  std::unordered_map<std::uint64_t, Index> observed;
  for (Index t = 0; t < trials; ++t) ++observed[subset_mask(sampler(rng))];
  return chi_square_from_counts(observed, expected, trials, significance);
}

std::string ChiSquareReport::to_text() const {
  return fmt::format(
      "chi-square {}: statistic {:.6g}, dof {}, critical {:.6g} at significance {:g}, p-value {:.6g}, "
      "trials {}, bins {}, impossible observations {}",
      passed ? "PASS" : "FAIL", statistic, dof, critical, significance, p_value, trials, bins, impossible);
}

std::string ChiSquareReport::to_json() const {
  const nlohmann::json j = {
      {"passed", passed},   {"statistic", statistic}, {"dof", dof},     {"critical", critical},
      {"p_value", p_value}, {"significance", significance}, {"trials", trials}, {"bins", bins},
      {"impossible", impossible},
  };
  return j.dump(2);
}

#define DPP_INSTANTIATE(S)                                                                  \
  template SubsetDistribution enumerate_probabilities<S>(const MarginalKernel<S>&);        \
  template AdmissibilityReport check_admissibility<S>(const MarginalKernel<S>&);
DPP_FOR_EACH_SCALAR(DPP_INSTANTIATE)
#undef DPP_INSTANTIATE

}  // namespace dpp
