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

// Blocked and tiled variants of the dense samplers and of the plain
// factorizations they are benchmarked against.
//
// The matrix is covered by a grid of tile_size x tile_size tiles (the last
// row and column of tiles may be ragged). Elimination advances block_size
// pivots at a time: the diagonal block is sampled by the unblocked kernel,
// the panels below and to the right are triangular solves, and the trailing
// matrix receives one GEMM update per tile. Each of these updates is a task
// whose dependencies name the tiles it reads and writes, so every tile sees
// its updates in a fixed order.
//
// The blocked sampler executes that task list sequentially in creation
// order; the tiled sampler hands it to an OpenMP task scheduler. Both
// therefore produce bitwise identical results for the same configuration,
// at any thread count.

#ifndef DPPFACT_BLOCKED_HPP_
#define DPPFACT_BLOCKED_HPP_

#include "dppfact/sampling.hpp"

namespace dpp {

struct BlockingConfig {
  /// Pivots eliminated per step; 0 selects 128 for n <= 2000, else 256.
  Index block_size = 0;
  /// Edge length of the scheduling tiles. Raised to a multiple of the
  /// effective block size if necessary.
  Index tile_size = 256;
  /// Worker threads for the tiled variants; 0 uses every available thread.
  int thread_count = 0;

  struct Resolved {
    Index block;
    Index tile;
    int threads;
  };
  Resolved resolve(Index n) const;
};

/// Plain unpivoted LU, blocked. Throws ZeroPivot on |pivot| < 1e-300.
template <Scalar S>
FactoredKernel<S> factor_blocked_lu(DenseMatrix<S> matrix, const BlockingConfig& cfg = {});

/// Plain unpivoted LDL^H on the lower triangle, blocked.
template <Scalar S>
FactoredKernel<S> factor_blocked_ldl(DenseMatrix<S> matrix, const BlockingConfig& cfg = {});

/// Plain factorization on the tiled task scheduler (LU or LDL^H).
template <Scalar S>
FactoredKernel<S> factor_tiled(DenseMatrix<S> matrix, Symmetry symmetry, const BlockingConfig& cfg = {});

/// Same sampling semantics and RNG consumption as sample_unblocked; the
/// kernel's symmetry flag selects LU or LDL^H.
template <Scalar S>
SampleResult<S> sample_blocked(const MarginalKernel<S>& kernel, RngStream& rng,
                               const BlockingConfig& cfg = {}, const SamplerOptions& options = {});

template <Scalar S>
SampleResult<S> sample_tiled_parallel(const MarginalKernel<S>& kernel, RngStream& rng,
                                      const BlockingConfig& cfg = {},
                                      const SamplerOptions& options = {});

}  // namespace dpp

#endif  // DPPFACT_BLOCKED_HPP_
