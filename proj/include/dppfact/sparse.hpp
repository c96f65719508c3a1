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

// Sparse-direct Hermitian DPP sampling.
//
// A symbolic phase computes the elimination tree and exact factor column
// counts of P K P^T. The numeric phase is an up-looking scalar LDL^H: row k
// of L comes from a sparse triangular solve over the tree-reachable set of
// column k, and the resulting pivot d_k is a conditional inclusion
// probability that is decided (and shifted by -1 on exclusion) before it is
// used. Decisions never change the factor's structure.

#ifndef DPPFACT_SPARSE_HPP_
#define DPPFACT_SPARSE_HPP_

#include <optional>
#include <vector>

#include "dppfact/kernel.hpp"

namespace dpp {

/// Hermitian kernel stored as its lower triangle (diagonal included) in
/// compressed sparse-column form. Row indices are strictly increasing within
/// a column and every column starts with its diagonal entry.
template <Scalar S>
class SparseKernel {
 public:
  struct Triplet {
    Index row;
    Index col;
    S value;
  };

  /// Validates the layout (MalformedSparse) and the diagonal (InvalidKernel).
  SparseKernel(Index n, std::vector<Index> col_ptr, std::vector<Index> row_index, std::vector<S> values);

  /// Entries with row < col are mirrored into the lower triangle. Duplicate
  /// coordinates are rejected with MalformedSparse.
  static SparseKernel from_triplets(Index n, std::vector<Triplet> triplets);

  Index order() const { return n_; }
  Index nnz() const { return static_cast<Index>(row_index_.size()); }
  const std::vector<Index>& col_ptr() const { return col_ptr_; }
  const std::vector<Index>& row_index() const { return row_index_; }
  const std::vector<S>& values() const { return values_; }

  /// Kernel of the relabelled process: entry (i, j) of the result is entry
  /// (perm[i], perm[j]) of this kernel.
  SparseKernel permuted(const std::vector<Index>& perm) const;

  DenseMatrix<S> to_dense() const;
  MarginalKernel<S> densify() const;

 private:
  Index n_;
  std::vector<Index> col_ptr_;
  std::vector<Index> row_index_;
  std::vector<S> values_;
};

struct EliminationTree {
  /// Fill-reducing order: pivot k eliminates original index perm[k].
  std::vector<Index> perm;
  /// Parent of each pivot in the tree, -1 for roots. Indexed by pivot.
  std::vector<Index> parent;
  std::vector<Index> postorder;
  /// Nonzeros per factor column, diagonal included.
  std::vector<Index> column_counts;
  Index factor_nnz = 0;
  /// Sum of squared column counts: the modelled operation count.
  double flops = 0.0;
};

/// Throws InvalidArgument if `perm` is not a bijection on [0, n).
template <Scalar S>
EliminationTree symbolic_analyze(const SparseKernel<S>& kernel,
                                 const std::optional<std::vector<Index>>& perm = std::nullopt);

/// L is unit lower triangular, stored strictly below the diagonal in CSC
/// form over pivot order; `diagonal` holds D of K - 1_{Y^C} (permuted).
template <Scalar S>
struct SparseFactor {
  std::vector<Index> col_ptr;
  std::vector<Index> row_index;
  std::vector<S> values;
  std::vector<double> diagonal;
  std::vector<Index> perm;

  /// Structural nonzeros of L including its unit diagonal.
  Index nnz() const { return static_cast<Index>(row_index.size() + diagonal.size()); }
};

template <Scalar S>
struct SparseSampleResult {
  Sample sample;
  SparseFactor<S> factor;
};

/// Pivots and decisions in the returned Sample are indexed by original
/// label, although draws are consumed in pivot order.
template <Scalar S>
SparseSampleResult<S> sample_sparse_hermitian(const SparseKernel<S>& kernel, const EliminationTree& tree,
                                              RngStream& rng, const SamplerOptions& options = {});

/// Greedy MAP (keep iff p >= 1/2) on the sparse elimination.
template <Scalar S>
SparseSampleResult<S> sparse_greedy_map(const SparseKernel<S>& kernel, const EliminationTree& tree,
                                        const SamplerOptions& options = {});

std::vector<Index> natural_ordering(Index n);

/// Reverse Cuthill-McKee, started from a pseudo-peripheral vertex of each
/// connected component.
template <Scalar S>
std::vector<Index> reverse_cuthill_mckee(const SparseKernel<S>& kernel);

/// Nested dissection of a width x height grid whose vertex (x, y) has index
/// y * width + x: separators are full grid lines, ordered last.
std::vector<Index> grid_nested_dissection(Index width, Index height);

}  // namespace dpp

#endif  // DPPFACT_SPARSE_HPP_
