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

#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "dppfact/kernel.hpp"
#include "detail/instantiate.hpp"

namespace dpp {

namespace {

template <class Real>
double diagonal_slack() {
  return std::is_same_v<Real, float> ? 4.0 * std::numeric_limits<float>::epsilon() : 1e-12;
}

}  // namespace

template <Scalar S>
MarginalKernel<S>::MarginalKernel(Matrix entries, Symmetry symmetry)
    : entries_(std::move(entries)), symmetry_(symmetry) {
  if (entries_.rows() != entries_.cols()) {
    throw Error(ErrorCode::kInvalidKernel,
                fmt::format("kernel must be square, got {}x{}", entries_.rows(), entries_.cols()));
  }
  const double slack = diagonal_slack<Real>();
  const Index n = entries_.rows();
  for (Index j = 0; j < n; ++j) {
    const double re = real_part(entries_(j, j));
    const double im = imag_part(entries_(j, j));
    if (!(std::abs(im) <= slack) || !(re >= -slack) || !(re <= 1.0 + slack)) {
      throw Error(ErrorCode::kInvalidKernel,
                  fmt::format("diagonal entry {} = ({}, {}) is not a probability", j, re, im));
    }
  }
  if (symmetry_ == Symmetry::kHermitian) {
    for (Index j = 0; j < n; ++j) {
      for (Index i = j + 1; i < n; ++i) {
        if (entries_(i, j) != conjugate(entries_(j, i))) {
          throw Error(ErrorCode::kInvalidKernel,
                      fmt::format("kernel flagged Hermitian but entry ({}, {}) is not the "
                                  "conjugate of ({}, {})",
                                  i, j, j, i));
        }
      }
    }
  }
  scale_ = n == 0 ? 0.0 : static_cast<double>(entries_.cwiseAbs().maxCoeff());
}

template <Scalar S>
MarginalKernel<S> MarginalKernel<S>::hermitian_from_lower(Matrix entries) {
  const Index n = entries.rows();
  for (Index j = 0; j < n; ++j) {
    entries(j, j) = S(real_part(entries(j, j)));
    for (Index i = j + 1; i < n; ++i) entries(j, i) = conjugate(entries(i, j));
  }
  return MarginalKernel(std::move(entries), Symmetry::kHermitian);
}

template <Scalar S>
DenseMatrix<S> FactoredKernel<S>::unit_lower() const {
  DenseMatrix<S> lower = matrix.template triangularView<Eigen::StrictlyLower>();
  lower.diagonal().setOnes();
  return lower;
}

template <Scalar S>
DenseMatrix<S> FactoredKernel<S>::upper() const {
  if (symmetry == Symmetry::kHermitian) {
    DenseMatrix<S> d = DenseMatrix<S>::Zero(matrix.rows(), matrix.cols());
    for (Index j = 0; j < matrix.rows(); ++j) d(j, j) = S(real_part(matrix(j, j)));
    return d;
  }
  return matrix.template triangularView<Eigen::Upper>();
}

template <Scalar S>
DenseMatrix<S> FactoredKernel<S>::reconstruct() const {
  const DenseMatrix<S> lower = unit_lower();
  if (symmetry == Symmetry::kHermitian) {
    return lower * upper() * lower.adjoint();
  }
  return lower * upper();
}

template <Scalar S>
DenseMatrix<S> shifted_by_exclusions(const DenseMatrix<S>& kernel, const std::vector<bool>& decisions) {
  DenseMatrix<S> shifted = kernel;
  for (Index j = 0; j < shifted.rows(); ++j) {
    if (!decisions[static_cast<std::size_t>(j)]) shifted(j, j) -= S(1);
  }
  return shifted;
}

#define DPP_INSTANTIATE(S)                   \
  template class MarginalKernel<S>;          \
  template struct FactoredKernel<S>;         \
  template DenseMatrix<S> shifted_by_exclusions<S>(const DenseMatrix<S>&, const std::vector<bool>&);
DPP_FOR_EACH_SCALAR(DPP_INSTANTIATE)
#undef DPP_INSTANTIATE

}  // namespace dpp
