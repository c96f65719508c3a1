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

// Matrix Market kernel files and plain-text sample files.
//
// Dense kernels use the array format (column-major; lower triangle only for
// symmetric and hermitian files), sparse kernels the coordinate format with
// lower-triangle entries. Values are written with 17 significant digits so a
// round trip through text is exact for 64-bit data.
//
// A sample file holds `loglik <value>` on its first line and the kept
// indices, space separated, on the second.

#ifndef DPPFACT_MATRIX_MARKET_HPP_
#define DPPFACT_MATRIX_MARKET_HPP_

#include <complex>
#include <iosfwd>
#include <string>

#include "dppfact/sparse.hpp"

namespace dpp {

enum class MarketSymmetry { kGeneral, kSymmetric, kHermitian };

struct MatrixMarket {
  bool coordinate = false;
  bool complex_field = false;
  MarketSymmetry symmetry = MarketSymmetry::kGeneral;
  Index rows = 0;
  Index cols = 0;
  /// Entries as stored in the file, 0-based. For symmetric and hermitian
  /// files only one triangle is present.
  std::vector<SparseKernel<std::complex<double>>::Triplet> entries;

  /// True when the kernel it describes is Hermitian: a hermitian file, or a
  /// symmetric file with a real field.
  bool hermitian() const;
};

/// Throws ParseError on malformed input.
MatrixMarket read_matrix_market(std::istream& in);
/// Throws IoError if the file cannot be opened.
MatrixMarket read_matrix_market_file(const std::string& path);

/// Expands the stored triangle; Hermitian files give Hermitian kernels,
/// everything else a general one. Imaginary parts are dropped for real S
/// (ParseError if any is nonzero).
template <Scalar S>
MarginalKernel<S> to_marginal_kernel(const MatrixMarket& market);

/// Requires a Hermitian file.
template <Scalar S>
SparseKernel<S> to_sparse_kernel(const MatrixMarket& market);

template <Scalar S>
void write_matrix_market(std::ostream& out, const MarginalKernel<S>& kernel);
template <Scalar S>
void write_matrix_market(std::ostream& out, const SparseKernel<S>& kernel);

struct SampleFile {
  double log_likelihood = 0.0;
  std::vector<Index> kept;
};

void write_sample(std::ostream& out, const Sample& sample);
SampleFile read_sample(std::istream& in);

}  // namespace dpp

#endif  // DPPFACT_MATRIX_MARKET_HPP_
