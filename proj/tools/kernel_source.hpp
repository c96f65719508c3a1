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


// Kernel selection for the command-line tool: `--builder` specs and Matrix
// Market inputs, converted to the working scalar type on demand.
//
//   identity:n                 real identity
//   random-hermitian:n         complex Hermitian, spectrum uniform on [0, 1)
//   random-nonhermitian:n      complex diagonal similarity of the above
//   aztec:d                    dense domino-tiling kernel
//   grid:WxH, hex:d            spanning-tree projection kernels
//   laplacian2d:WxH:sigma      sparse shifted Laplacian

#ifndef DPPFACT_TOOLS_KERNEL_SOURCE_HPP_
#define DPPFACT_TOOLS_KERNEL_SOURCE_HPP_

#include <complex>
#include <cstdint>
#include <optional>
#include <string>

#include "dppfact/aztec.hpp"
#include "dppfact/graph.hpp"
#include "dppfact/sparse.hpp"

namespace dpp::cli {

using Complex = std::complex<double>;

struct KernelSource {
  std::string name;
  std::optional<MarginalKernel<Complex>> dense;
  std::optional<SparseKernel<Complex>> sparse;
  /// Every entry has zero imaginary part.
  bool real = true;
  /// Known projection rank, or -1.
  Index rank = -1;
  /// Grid dimensions of a laplacian2d builder, for nested dissection.
  Index grid_width = 0;
  Index grid_height = 0;
  std::optional<UndirectedGraph> graph;
  std::optional<AztecDiamond> diamond;

  Index order() const { return dense ? dense->order() : sparse->order(); }
  bool hermitian() const { return sparse || dense->hermitian(); }
};

/// Exactly one of `builder` and `input` must be non-empty. `kernel_seed`
/// drives the random builders.
KernelSource load_kernel(const std::string& builder, const std::string& input, std::uint64_t kernel_seed);

UndirectedGraph parse_graph(const std::string& spec);

/// Real S takes the real part; callers dispatch on KernelSource::real.
template <Scalar S>
MarginalKernel<S> dense_as(const KernelSource& source);

/// Requires a Hermitian kernel; dense kernels keep their nonzero entries.
template <Scalar S>
SparseKernel<S> sparse_as(const KernelSource& source);

}  // namespace dpp::cli

#endif  // DPPFACT_TOOLS_KERNEL_SOURCE_HPP_
