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

// Timing harness for the dense samplers and their plain factorization
// baselines.
//
// Variant names end in the precision (32 or 64); a dash before it is
// accepted on input. Hermitian variants run on real symmetric kernels and
// are charged n^3 / 3 flops; general variants run on complex kernels and are
// charged 4 * (2/3) n^3 real flops.
//
//   hermitian              tiled LDL^H sampler
//   ldl                    tiled plain LDL^H factorization
//   general                tiled LU sampler
//   lu                     tiled plain LU factorization
//   unblocked-hermitian    unblocked LDL^H sampler
//   unblocked-general      unblocked LU sampler

#ifndef DPPFACT_BENCHMARK_HPP_
#define DPPFACT_BENCHMARK_HPP_

#include <string>

#include "dppfact/blocked.hpp"

namespace dpp {

struct BenchmarkRow {
  std::string variant;
  Index n = 0;
  int precision = 64;
  /// Median over repetitions.
  double seconds = 0.0;
  double gflops = 0.0;
};

std::vector<std::string> benchmark_variants();

/// Canonical name ("hermitian-64" becomes "hermitian64"). Throws
/// InvalidArgument for unknown variants.
std::string canonical_variant(const std::string& name);

double model_flops(const std::string& variant, Index n);

/// Kernels are Gershgorin-admissible random matrices, regenerated from
/// `seed` for every size. Kernel construction is not timed.
std::vector<BenchmarkRow> benchmark_suite(const std::vector<Index>& sizes, const std::vector<std::string>& variants,
                                          int reps, const BlockingConfig& cfg = {}, std::uint64_t seed = 1);

/// Header `variant,n,precision,seconds,gflops` and one line per row.
std::string to_csv(const std::vector<BenchmarkRow>& rows);

}  // namespace dpp

#endif  // DPPFACT_BENCHMARK_HPP_
