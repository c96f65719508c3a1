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

#include "dppfact/sampling.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "detail/elimination.hpp"
#include "detail/instantiate.hpp"

namespace dpp {

namespace {

template <Scalar S>
SampleResult<S> run_unblocked(const MarginalKernel<S>& kernel, detail::PivotProcessor<S>& proc,
                              bool hermitian) {
  SampleResult<S> result;
  result.factor.matrix = kernel.matrix();
  result.factor.symmetry = hermitian ? Symmetry::kHermitian : Symmetry::kGeneral;
  if (hermitian) {
    detail::ldl_unblocked<S>(result.factor.matrix, 0, proc);
  } else {
    detail::lu_unblocked<S>(result.factor.matrix, 0, proc);
  }
  result.sample = proc.take_sample();
  return result;
}

template <Scalar S>
void require_hermitian(const MarginalKernel<S>& kernel, const char* who) {
  if (!kernel.hermitian()) {
    throw Error(ErrorCode::kInvalidArgument, fmt::format("{} requires a Hermitian kernel", who));
  }
}

void check_index_set(const std::vector<Index>& set, Index n, std::vector<int>& role, int tag) {
  for (Index j : set) {
    if (j < 0 || j >= n) throw Error(ErrorCode::kInvalidArgument, fmt::format("index {} out of range", j));
    if (role[static_cast<std::size_t>(j)] != 0) {
      throw Error(ErrorCode::kInvalidArgument, fmt::format("index {} listed twice", j));
    }
    role[static_cast<std::size_t>(j)] = tag;
  }
}

}  // namespace

template <Scalar S>
SampleResult<S> sample_nonhermitian_unblocked(const MarginalKernel<S>& kernel, RngStream& rng,
                                              const SamplerOptions& options) {
  detail::PivotProcessor<S> proc(detail::PivotMode::kSample, kernel.order(),
                                 options.tolerance<RealOf<S>>(), kernel.scale(), &rng);
  return run_unblocked(kernel, proc, false);
}

template <Scalar S>
SampleResult<S> sample_hermitian_unblocked(const MarginalKernel<S>& kernel, RngStream& rng,
                                           const SamplerOptions& options) {
  require_hermitian(kernel, "sample_hermitian_unblocked");
  detail::PivotProcessor<S> proc(detail::PivotMode::kSample, kernel.order(),
                                 options.tolerance<RealOf<S>>(), kernel.scale(), &rng);
  return run_unblocked(kernel, proc, true);
}

template <Scalar S>
SampleResult<S> sample_unblocked(const MarginalKernel<S>& kernel, RngStream& rng,
                                 const SamplerOptions& options) {
  return kernel.hermitian() ? sample_hermitian_unblocked(kernel, rng, options)
                            : sample_nonhermitian_unblocked(kernel, rng, options);
}

template <Scalar S>
SampleResult<S> greedy_map(const MarginalKernel<S>& kernel, const SamplerOptions& options) {
  detail::PivotProcessor<S> proc(detail::PivotMode::kMap, kernel.order(),
                                 options.tolerance<RealOf<S>>(), kernel.scale());
  return run_unblocked(kernel, proc, kernel.hermitian());
}

template <Scalar S>
Sample replay_decisions(const MarginalKernel<S>& kernel, const std::vector<bool>& decisions) {
  if (static_cast<Index>(decisions.size()) != kernel.order()) {
    throw Error(ErrorCode::kInvalidArgument, "decision vector length differs from kernel order");
  }
  detail::PivotProcessor<S> proc(detail::PivotMode::kForced, kernel.order(), 0.0, kernel.scale(),
                                 nullptr, &decisions);
  return run_unblocked(kernel, proc, kernel.hermitian()).sample;
}

template <Scalar S>
double log_likelihood_of(const MarginalKernel<S>& kernel, const std::vector<Index>& subset) {
  std::vector<bool> decisions(static_cast<std::size_t>(kernel.order()), false);
  for (Index j : subset) {
    if (j < 0 || j >= kernel.order()) {
      throw Error(ErrorCode::kInvalidArgument, fmt::format("index {} out of range", j));
    }
    decisions[static_cast<std::size_t>(j)] = true;
  }
  return replay_decisions(kernel, decisions).log_likelihood;
}

template <Scalar S>
MarginalKernel<S> conditional_kernel(const MarginalKernel<S>& kernel,
                                     const std::vector<Index>& included,
                                     const std::vector<Index>& excluded) {
  const Index n = kernel.order();
  std::vector<int> role(static_cast<std::size_t>(n), 0);
  check_index_set(included, n, role, 1);
  check_index_set(excluded, n, role, 2);

  // Eliminated indices first (ascending), remaining ones after.
  std::vector<Index> order;
  for (Index j = 0; j < n; ++j) {
    if (role[static_cast<std::size_t>(j)] != 0) order.push_back(j);
  }
  const auto eliminated = static_cast<Index>(order.size());
  for (Index j = 0; j < n; ++j) {
    if (role[static_cast<std::size_t>(j)] == 0) order.push_back(j);
  }

  DenseMatrix<S> a(n, n);
  for (Index c = 0; c < n; ++c) {
    for (Index r = 0; r < n; ++r) a(r, c) = kernel.matrix()(order[r], order[c]);
  }
  for (Index j = 0; j < eliminated; ++j) {
    if (role[static_cast<std::size_t>(order[j])] == 2) a(j, j) -= S(1);
  }
  for (Index j = 0; j < eliminated; ++j) {
    const S pivot = a(j, j);
    if (!(std::abs(pivot) >= 1e-12)) {
      throw Error(ErrorCode::kSingularConditioning,
                  fmt::format("eliminated pivot for index {} has magnitude {}", order[j],
                              double(std::abs(pivot))));
    }
    const Index m = n - j - 1;
    if (m == 0) break;
    a.col(j).tail(m) /= pivot;
    a.bottomRightCorner(m, m).noalias() -= a.col(j).tail(m) * a.row(j).tail(m);
  }
  DenseMatrix<S> schur = a.bottomRightCorner(n - eliminated, n - eliminated);
  if (kernel.hermitian()) return MarginalKernel<S>::hermitian_from_lower(std::move(schur));
  return MarginalKernel<S>(std::move(schur), Symmetry::kGeneral);
}

#define DPP_INSTANTIATE(S)                                                                      \
  template SampleResult<S> sample_nonhermitian_unblocked<S>(const MarginalKernel<S>&, RngStream&, \
                                                            const SamplerOptions&);            \
  template SampleResult<S> sample_hermitian_unblocked<S>(const MarginalKernel<S>&, RngStream&,    \
                                                         const SamplerOptions&);               \
  template SampleResult<S> sample_unblocked<S>(const MarginalKernel<S>&, RngStream&,              \
                                               const SamplerOptions&);                         \
  template SampleResult<S> greedy_map<S>(const MarginalKernel<S>&, const SamplerOptions&);        \
  template MarginalKernel<S> conditional_kernel<S>(const MarginalKernel<S>&,                      \
                                                   const std::vector<Index>&,                    \
                                                   const std::vector<Index>&);                   \
  template Sample replay_decisions<S>(const MarginalKernel<S>&, const std::vector<bool>&);        \
  template double log_likelihood_of<S>(const MarginalKernel<S>&, const std::vector<Index>&);
DPP_FOR_EACH_SCALAR(DPP_INSTANTIATE)
#undef DPP_INSTANTIATE

}  // namespace dpp
