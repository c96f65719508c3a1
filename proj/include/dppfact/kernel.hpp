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

#ifndef DPPFACT_KERNEL_HPP_
#define DPPFACT_KERNEL_HPP_

#include "dppfact/common.hpp"

namespace dpp {

enum class Symmetry { kHermitian, kGeneral };

/// Dense marginal kernel K with P[A ⊆ Y] = det(K_A).
///
/// Entries are column-major. Construction checks that the diagonal is real
/// and inside [0, 1] (slack 1e-12 for 64-bit, 4 ulp-of-one for 32-bit), and
/// that a Hermitian kernel is exactly Hermitian. Full admissibility is not
/// checked here; see check_admissibility().
template <Scalar S>
class MarginalKernel {
 public:
  using ScalarType = S;
  using Real = RealOf<S>;
  using Matrix = DenseMatrix<S>;

  MarginalKernel(Matrix entries, Symmetry symmetry);

  /// Builds a Hermitian kernel from the lower triangle of `entries`; the
  /// strictly upper part is overwritten with the conjugate transpose and
  /// the diagonal imaginary parts are dropped.
  static MarginalKernel hermitian_from_lower(Matrix entries);

  Index order() const { return entries_.rows(); }
  const Matrix& matrix() const { return entries_; }
  Symmetry symmetry() const { return symmetry_; }
  bool hermitian() const { return symmetry_ == Symmetry::kHermitian; }

  /// max |K_ij|; scales the NonRealPivot threshold.
  double scale() const { return scale_; }

  template <Scalar T>
  MarginalKernel<T> cast() const {
    return MarginalKernel<T>(entries_.template cast<T>(), symmetry_);
  }

 private:
  Matrix entries_;
  Symmetry symmetry_;
  double scale_ = 0.0;
};

/// In-place factorization of K - 1_{Y^C} left behind by a sampler.
///
/// General: unit lower L strictly below the diagonal, U on and above.
/// Hermitian: unit lower L strictly below, real D on the diagonal; the
/// strictly upper triangle is unspecified.
template <Scalar S>
struct FactoredKernel {
  DenseMatrix<S> matrix;
  Symmetry symmetry = Symmetry::kGeneral;

  DenseMatrix<S> unit_lower() const;
  /// U for general factors, D for Hermitian ones.
  DenseMatrix<S> upper() const;
  /// L*U or L*D*L^H.
  DenseMatrix<S> reconstruct() const;
};

/// K - 1_{Y^C} for a ground-set decision vector.
template <Scalar S>
DenseMatrix<S> shifted_by_exclusions(const DenseMatrix<S>& kernel, const std::vector<bool>& decisions);

}  // namespace dpp

#endif  // DPPFACT_KERNEL_HPP_
