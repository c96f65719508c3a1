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

// Unblocked factorization-based samplers.
//
// Index j is decided with its probability conditioned on all earlier
// decisions, which is the j-th pivot of an LU (or LDL^H) factorization of K
// in which every excluded pivot has been decremented by one. The sampler
// draws one uniform u_j per index, in order, and keeps j iff u_j < p_j.

#ifndef DPPFACT_SAMPLING_HPP_
#define DPPFACT_SAMPLING_HPP_

#include <vector>

#include "dppfact/kernel.hpp"

namespace dpp {

template <Scalar S>
struct SampleResult {
  Sample sample;
  FactoredKernel<S> factor;
};

/// LU-based sampler for arbitrary (possibly non-Hermitian) kernels. Roughly
/// (2/3) n^3 flops.
template <Scalar S>
SampleResult<S> sample_nonhermitian_unblocked(const MarginalKernel<S>& kernel, RngStream& rng,
                                              const SamplerOptions& options = {});

/// LDL^H-based sampler; touches only the lower triangle. Roughly (1/3) n^3
/// flops. Throws InvalidArgument for kernels not flagged Hermitian.
template <Scalar S>
SampleResult<S> sample_hermitian_unblocked(const MarginalKernel<S>& kernel, RngStream& rng,
                                           const SamplerOptions& options = {});

/// Dispatches on the kernel's symmetry flag.
template <Scalar S>
SampleResult<S> sample_unblocked(const MarginalKernel<S>& kernel, RngStream& rng,
                                 const SamplerOptions& options = {});

/// Greedy maximum-likelihood inference: index j is kept iff p_j >= 1/2.
template <Scalar S>
SampleResult<S> greedy_map(const MarginalKernel<S>& kernel, const SamplerOptions& options = {});

/// Kernel of the DPP over the remaining indices conditioned on
/// `included` ⊆ Y and `excluded` ∩ Y = ∅. The remaining indices keep their
/// relative order.
template <Scalar S>
MarginalKernel<S> conditional_kernel(const MarginalKernel<S>& kernel,
                                     const std::vector<Index>& included,
                                     const std::vector<Index>& excluded);

/// Replays the sampler with decisions forced to match `decisions`.
/// log_likelihood is -inf when the subset has probability zero.
template <Scalar S>
Sample replay_decisions(const MarginalKernel<S>& kernel, const std::vector<bool>& decisions);

/// ln P[Y = subset]; -inf for probability-zero subsets.
template <Scalar S>
double log_likelihood_of(const MarginalKernel<S>& kernel, const std::vector<Index>& subset);

}  // namespace dpp

#endif  // DPPFACT_SAMPLING_HPP_
