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

#include "dppfact/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "detail/elimination.hpp"
#include "detail/instantiate.hpp"

namespace dpp {

namespace {

template <class Real>
double diagonal_slack() {
  return std::is_same_v<Real, float> ? 4.0 * std::numeric_limits<float>::epsilon() : 1e-12;
}

std::vector<Index> inverse_permutation(const std::vector<Index>& perm, Index n) {
  if (static_cast<Index>(perm.size()) != n) {
    throw Error(ErrorCode::kInvalidArgument,
                fmt::format("permutation has length {}, expected {}", perm.size(), n));
  }
  std::vector<Index> inverse(static_cast<std::size_t>(n), -1);
  for (Index k = 0; k < n; ++k) {
    const Index v = perm[static_cast<std::size_t>(k)];
    if (v < 0 || v >= n || inverse[static_cast<std::size_t>(v)] != -1) {
      throw Error(ErrorCode::kInvalidArgument, "ordering is not a permutation");
    }
    inverse[static_cast<std::size_t>(v)] = k;
  }
  return inverse;
}

// Column k lists the entries A(i, k), i <= k, of A = P K P^T.
template <Scalar S>
struct UpperPattern {
  std::vector<Index> col_ptr;
  std::vector<Index> row_index;
  std::vector<S> values;
};

template <Scalar S>
UpperPattern<S> permuted_upper(const SparseKernel<S>& kernel, const std::vector<Index>& inverse) {
  const Index n = kernel.order();
  UpperPattern<S> upper;
  upper.col_ptr.assign(static_cast<std::size_t>(n + 1), 0);
  const auto& cp = kernel.col_ptr();
  const auto& ri = kernel.row_index();
  for (Index c = 0; c < n; ++c) {
    for (Index p = cp[c]; p < cp[c + 1]; ++p) {
      const Index col = std::max(inverse[ri[p]], inverse[c]);
      ++upper.col_ptr[static_cast<std::size_t>(col + 1)];
    }
  }
  for (Index k = 0; k < n; ++k) upper.col_ptr[k + 1] += upper.col_ptr[k];
  upper.row_index.resize(static_cast<std::size_t>(kernel.nnz()));
  upper.values.resize(static_cast<std::size_t>(kernel.nnz()));
  std::vector<Index> next(upper.col_ptr.begin(), upper.col_ptr.end() - 1);
  for (Index c = 0; c < n; ++c) {
    for (Index p = cp[c]; p < cp[c + 1]; ++p) {
      const Index i = inverse[ri[p]];
      const Index j = inverse[c];
      // Lower entry K(r, c) lands at (i, j); store it in the upper triangle.
      const Index col = std::max(i, j);
      const Index slot = next[col]++;
      upper.row_index[slot] = std::min(i, j);
      upper.values[slot] = i > j ? conjugate(kernel.values()[p]) : kernel.values()[p];
    }
  }
  return upper;
}

std::vector<Index> tree_postorder(const std::vector<Index>& parent) {
  const auto n = static_cast<Index>(parent.size());
  std::vector<Index> head(static_cast<std::size_t>(n), -1);
  std::vector<Index> sibling(static_cast<std::size_t>(n), -1);
  for (Index j = n - 1; j >= 0; --j) {
    const Index p = parent[j];
    if (p < 0) continue;
    sibling[j] = head[p];
    head[p] = j;
  }
  std::vector<Index> order;
  order.reserve(static_cast<std::size_t>(n));
  std::vector<Index> stack;
  for (Index root = 0; root < n; ++root) {
    if (parent[root] != -1) continue;
    stack.push_back(root);
    while (!stack.empty()) {
      const Index top = stack.back();
      const Index child = head[top];
      if (child == -1) {
        stack.pop_back();
        order.push_back(top);
      } else {
        head[top] = sibling[child];
        stack.push_back(child);
      }
    }
  }
  return order;
}

template <Scalar S>
SparseSampleResult<S> up_looking(const SparseKernel<S>& kernel, const EliminationTree& tree,
                                 detail::PivotProcessor<S>& proc) {
  using Real = RealOf<S>;
  const Index n = kernel.order();
  if (static_cast<Index>(tree.parent.size()) != n || static_cast<Index>(tree.column_counts.size()) != n) {
    throw Error(ErrorCode::kInvalidArgument, "elimination tree does not match the kernel order");
  }
  const auto inverse = inverse_permutation(tree.perm, n);
  const UpperPattern<S> upper = permuted_upper(kernel, inverse);

  SparseSampleResult<S> result;
  SparseFactor<S>& f = result.factor;
  f.perm = tree.perm;
  f.col_ptr.assign(static_cast<std::size_t>(n + 1), 0);
  for (Index j = 0; j < n; ++j) f.col_ptr[j + 1] = f.col_ptr[j] + tree.column_counts[j] - 1;
  f.row_index.resize(static_cast<std::size_t>(f.col_ptr[n]));
  f.values.resize(static_cast<std::size_t>(f.col_ptr[n]));
  f.diagonal.assign(static_cast<std::size_t>(n), 0.0);

  std::vector<Real> d(static_cast<std::size_t>(n), Real(0));
  std::vector<S> y(static_cast<std::size_t>(n), S(0));
  std::vector<Index> filled(static_cast<std::size_t>(n), 0);
  std::vector<Index> flag(static_cast<std::size_t>(n), -1);
  std::vector<Index> pattern(static_cast<std::size_t>(n));

  auto mismatch = [](Index column) {
    return Error(ErrorCode::kStructureMismatch,
                 fmt::format("factor column {} disagrees with the symbolic prediction", column));
  };

  for (Index k = 0; k < n; ++k) {
    flag[k] = k;
    Index top = n;
    for (Index p = upper.col_ptr[k]; p < upper.col_ptr[k + 1]; ++p) {
      Index i = upper.row_index[p];
      y[i] += upper.values[p];
      Index len = 0;
      for (; flag[i] != k; i = tree.parent[i]) {
        if (i < 0 || i > k) throw mismatch(k);
        pattern[len++] = i;
        flag[i] = k;
      }
      while (len > 0) pattern[--top] = pattern[--len];
    }
    Real dk = real_part(y[k]);
    y[k] = S(0);
    for (; top < n; ++top) {
      const Index i = pattern[top];
      const S yi = y[i];
      y[i] = S(0);
      const Index begin = f.col_ptr[i];
      const Index end = begin + filled[i];
      for (Index p = begin; p < end; ++p) y[f.row_index[p]] -= f.values[p] * yi;
      if (end >= f.col_ptr[i + 1]) throw mismatch(i);
      const S lki = conjugate(yi) / d[i];
      dk -= real_part(lki * yi);
      f.row_index[end] = k;
      f.values[end] = lki;
      ++filled[i];
    }
    d[k] = proc.hermitian(k, dk);
    f.diagonal[k] = static_cast<double>(d[k]);
    if (proc.aborted()) break;
  }
  if (!proc.aborted()) {
    for (Index j = 0; j < n; ++j) {
      if (f.col_ptr[j] + filled[j] != f.col_ptr[j + 1]) throw mismatch(j);
    }
  }
  result.sample = proc.take_sample(tree.perm);
  return result;
}

template <Scalar S>
double max_magnitude(const SparseKernel<S>& kernel) {
  double scale = 0.0;
  for (const S& v : kernel.values()) scale = std::max(scale, static_cast<double>(std::abs(v)));
  return scale;
}

}  // namespace

template <Scalar S>
SparseKernel<S>::SparseKernel(Index n, std::vector<Index> col_ptr, std::vector<Index> row_index,
                              std::vector<S> values)
    : n_(n), col_ptr_(std::move(col_ptr)), row_index_(std::move(row_index)), values_(std::move(values)) {
  if (n_ < 0 || static_cast<Index>(col_ptr_.size()) != n_ + 1 || col_ptr_.front() != 0 ||
      col_ptr_.back() != static_cast<Index>(row_index_.size()) || values_.size() != row_index_.size()) {
    throw Error(ErrorCode::kMalformedSparse, "inconsistent compressed-column array lengths");
  }
  const double slack = diagonal_slack<RealOf<S>>();
  for (Index j = 0; j < n_; ++j) {
    const Index p0 = col_ptr_[j];
    const Index p1 = col_ptr_[j + 1];
    if (p1 < p0) throw Error(ErrorCode::kMalformedSparse, fmt::format("column {} has negative length", j));
    if (p1 == p0 || row_index_[p0] != j) {
      throw Error(ErrorCode::kMalformedSparse,
                  fmt::format("column {} must start with its diagonal entry", j));
    }
    for (Index p = p0 + 1; p < p1; ++p) {
      if (row_index_[p] <= row_index_[p - 1] || row_index_[p] >= n_) {
        throw Error(ErrorCode::kMalformedSparse,
                    fmt::format("column {} has unsorted, duplicate or out-of-range row indices", j));
      }
    }
    const double re = real_part(values_[p0]);
    const double im = imag_part(values_[p0]);
    if (!(std::abs(im) <= slack) || !(re >= -slack) || !(re <= 1.0 + slack)) {
      throw Error(ErrorCode::kInvalidKernel,
                  fmt::format("diagonal entry {} = ({}, {}) is not a probability", j, re, im));
    }
  }
}

template <Scalar S>
SparseKernel<S> SparseKernel<S>::from_triplets(Index n, std::vector<Triplet> triplets) {
  for (Triplet& t : triplets) {
    if (t.row < 0 || t.col < 0 || t.row >= n || t.col >= n) {
      throw Error(ErrorCode::kMalformedSparse,
                  fmt::format("entry ({}, {}) outside a {}x{} matrix", t.row, t.col, n, n));
    }
    if (t.row < t.col) t = {t.col, t.row, conjugate(t.value)};
  }
  std::sort(triplets.begin(), triplets.end(), [](const Triplet& a, const Triplet& b) {
    return a.col != b.col ? a.col < b.col : a.row < b.row;
  });
  std::vector<Index> col_ptr(static_cast<std::size_t>(n + 1), 0);
  std::vector<Index> rows;
  std::vector<S> values;
  rows.reserve(triplets.size());
  values.reserve(triplets.size());
  for (std::size_t k = 0; k < triplets.size(); ++k) {
    const Triplet& t = triplets[k];
    if (k > 0 && t.row == triplets[k - 1].row && t.col == triplets[k - 1].col) {
      throw Error(ErrorCode::kMalformedSparse, fmt::format("duplicate entry ({}, {})", t.row, t.col));
    }
    ++col_ptr[static_cast<std::size_t>(t.col + 1)];
    rows.push_back(t.row);
    values.push_back(t.value);
  }
  for (Index j = 0; j < n; ++j) col_ptr[j + 1] += col_ptr[j];
  return SparseKernel(n, std::move(col_ptr), std::move(rows), std::move(values));
}

template <Scalar S>
SparseKernel<S> SparseKernel<S>::permuted(const std::vector<Index>& perm) const {
  const auto inverse = inverse_permutation(perm, n_);
  std::vector<Triplet> triplets;
  triplets.reserve(values_.size());
  for (Index c = 0; c < n_; ++c) {
    for (Index p = col_ptr_[c]; p < col_ptr_[c + 1]; ++p) {
      triplets.push_back({inverse[row_index_[p]], inverse[c], values_[p]});
    }
  }
  return from_triplets(n_, std::move(triplets));
}

template <Scalar S>
DenseMatrix<S> SparseKernel<S>::to_dense() const {
  DenseMatrix<S> dense = DenseMatrix<S>::Zero(n_, n_);
  for (Index c = 0; c < n_; ++c) {
    for (Index p = col_ptr_[c]; p < col_ptr_[c + 1]; ++p) {
      dense(row_index_[p], c) = values_[p];
      dense(c, row_index_[p]) = conjugate(values_[p]);
    }
    dense(c, c) = S(real_part(values_[col_ptr_[c]]));
  }
  return dense;
}

template <Scalar S>
MarginalKernel<S> SparseKernel<S>::densify() const {
  return MarginalKernel<S>(to_dense(), Symmetry::kHermitian);
}

template <Scalar S>
EliminationTree symbolic_analyze(const SparseKernel<S>& kernel, const std::optional<std::vector<Index>>& perm) {
  const Index n = kernel.order();
  EliminationTree tree;
  tree.perm = perm ? *perm : natural_ordering(n);
  const auto inverse = inverse_permutation(tree.perm, n);
  const UpperPattern<S> upper = permuted_upper(kernel, inverse);

  // Liu's algorithm with path compression.
  tree.parent.assign(static_cast<std::size_t>(n), -1);
  std::vector<Index> ancestor(static_cast<std::size_t>(n), -1);
  for (Index k = 0; k < n; ++k) {
    for (Index p = upper.col_ptr[k]; p < upper.col_ptr[k + 1]; ++p) {
      Index i = upper.row_index[p];
      while (i != -1 && i < k) {
        const Index next = ancestor[i];
        ancestor[i] = k;
        if (next == -1) tree.parent[i] = k;
        i = next;
      }
    }
  }

  // Row k of L is the union of the tree paths from each i in column k of
  // the upper pattern up to k.
  tree.column_counts.assign(static_cast<std::size_t>(n), 1);
  std::vector<Index> flag(static_cast<std::size_t>(n), -1);
  for (Index k = 0; k < n; ++k) {
    flag[k] = k;
    for (Index p = upper.col_ptr[k]; p < upper.col_ptr[k + 1]; ++p) {
      for (Index i = upper.row_index[p]; flag[i] != k; i = tree.parent[i]) {
        ++tree.column_counts[i];
        flag[i] = k;
      }
    }
  }
  tree.postorder = tree_postorder(tree.parent);
  for (Index c : tree.column_counts) {
    tree.factor_nnz += c;
    tree.flops += static_cast<double>(c) * static_cast<double>(c);
  }
  return tree;
}

template <Scalar S>
SparseSampleResult<S> sample_sparse_hermitian(const SparseKernel<S>& kernel, const EliminationTree& tree,
                                              RngStream& rng, const SamplerOptions& options) {
  detail::PivotProcessor<S> proc(detail::PivotMode::kSample, kernel.order(),
                                 options.tolerance<RealOf<S>>(), max_magnitude(kernel), &rng);
  return up_looking(kernel, tree, proc);
}

template <Scalar S>
SparseSampleResult<S> sparse_greedy_map(const SparseKernel<S>& kernel, const EliminationTree& tree,
                                        const SamplerOptions& options) {
  detail::PivotProcessor<S> proc(detail::PivotMode::kMap, kernel.order(),
                                 options.tolerance<RealOf<S>>(), max_magnitude(kernel));
  return up_looking(kernel, tree, proc);
}

#define DPP_INSTANTIATE(S)                                                                            \
  template class SparseKernel<S>;                                                                     \
  template struct SparseFactor<S>;                                                                    \
  template EliminationTree symbolic_analyze<S>(const SparseKernel<S>&,                                \
                                               const std::optional<std::vector<Index>>&);             \
  template SparseSampleResult<S> sample_sparse_hermitian<S>(const SparseKernel<S>&,                   \
                                                            const EliminationTree&, RngStream&,       \
                                                            const SamplerOptions&);                   \
  template SparseSampleResult<S> sparse_greedy_map<S>(const SparseKernel<S>&, const EliminationTree&, \
                                                      const SamplerOptions&);
DPP_FOR_EACH_SCALAR(DPP_INSTANTIATE)
#undef DPP_INSTANTIATE

}  // namespace dpp
