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

// Domino tilings of the Aztec diamond as a DPP over dominoes.
//
// The diamond of order d is the set of unit squares [x, x+1] x [y, y+1]
// with |x + 1/2| + |y + 1/2| <= d. A square is white when x + y is even.
// The Kasteleyn matrix M has rows indexed by white squares and columns by
// black squares, with weight 1 between horizontal neighbours and i between
// vertical neighbours. For dominoes e = (w_e, b_e) and f = (w_f, b_f) the
// kernel entry is C[e][f] = M[w_e][b_e] * G[b_f][w_e] with G = M^{-1}.
//
// Dominoes are ordered by white square (row-major, bottom row first) and,
// within a white square, by neighbour direction left, right, down, up.
// Black squares are numbered by the index of their last domino, so once a
// block of dominoes has been eliminated the white and black squares still
// in play are suffixes of their numberings.

#ifndef DPPFACT_AZTEC_HPP_
#define DPPFACT_AZTEC_HPP_

#include <array>
#include <complex>
#include <string>

#include "dppfact/kernel.hpp"

namespace dpp {

/// Direction from a domino's black square to its white square.
enum class TileOrientation { kLeft, kRight, kUp, kDown };

const char* to_string(TileOrientation orientation);

struct Domino {
  Index white;
  Index black;
  TileOrientation orientation;
  /// Kasteleyn weight M[white][black]: 1 or i.
  std::complex<double> weight;
};

class AztecDiamond {
 public:
  explicit AztecDiamond(Index order);

  Index order() const { return order_; }
  /// d(d + 1) squares of each colour.
  Index squares_per_colour() const { return static_cast<Index>(whites_.size()); }
  Index domino_count() const { return static_cast<Index>(dominoes_.size()); }
  const std::vector<Domino>& dominoes() const { return dominoes_; }
  /// Lower-left corners (x, y) of the squares.
  const std::vector<std::array<Index, 2>>& whites() const { return whites_; }
  const std::vector<std::array<Index, 2>>& blacks() const { return blacks_; }

  DenseMatrix<std::complex<double>> kasteleyn() const;

 private:
  Index order_;
  std::vector<std::array<Index, 2>> whites_;
  std::vector<std::array<Index, 2>> blacks_;
  std::vector<Domino> dominoes_;
};

/// G = M^{-1} (black x white), accurate entrywise even though its entries span
/// many orders of magnitude on large diamonds. Throws SingularKasteleyn.
DenseMatrix<std::complex<double>> kasteleyn_inverse(const AztecDiamond& diamond);

/// Dense Kenyon kernel over all dominoes. The diagonal is validated to be
/// real within 1e-10 and then stored as exactly real.
MarginalKernel<std::complex<double>> aztec_kernel(const AztecDiamond& diamond);

struct KenyonOptions {
  /// Dominoes eliminated per step.
  Index block_size = 256;
  SamplerOptions sampler;
};

/// Samples the tiling DPP without forming the dense kernel: every Schur
/// complement of the kernel keeps the form wt_e * G'[b_f][w_e], so only an
/// updated copy of G is stored. Same pivots, decisions and RNG consumption
/// as the unblocked LU sampler on aztec_kernel, up to rounding. S is the
/// working precision.
template <Scalar S>
Sample sample_kenyon(const AztecDiamond& diamond, const DenseMatrix<std::complex<double>>& inverse,
                     RngStream& rng, const KenyonOptions& options = {});

struct TilingReport {
  bool valid = false;
  /// Squares covered zero times or more than once.
  Index uncovered = 0;
  Index overcovered = 0;
  std::array<Index, 4> orientation_counts{};
  std::string reason;
};

TilingReport decode_tiling(const AztecDiamond& diamond, const std::vector<Index>& kept);

/// -d(d + 1) ln(2) / 2: every tiling is equally likely.
double aztec_log_likelihood(Index order);

}  // namespace dpp

#endif  // DPPFACT_AZTEC_HPP_
