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

// Projection (elementary) DPPs and the spectral sampler.
//
// For an orthogonal projection of rank k the remaining diagonal of every
// Schur complement sums to the number of indices still to be drawn, so a
// diagonally pivoted Cholesky factorization can pick its j-th pivot t with
// probability d_t / (k - j) and stops after exactly k steps.

#ifndef DPPFACT_ELEMENTARY_HPP_
#define DPPFACT_ELEMENTARY_HPP_

#include <Eigen/Eigenvalues>

#include "dppfact/kernel.hpp"

namespace dpp {

template <Scalar S>
class ProjectionKernel {
 public:
  /// Checks K = K^H, K^2 = K (elementwise 1e-8) and an integral trace
  /// (1e-6). Throws InvalidKernel otherwise.
  explicit ProjectionKernel(MarginalKernel<S> kernel);

  /// Skips the O(n^3) idempotency check; for kernels that are projections
  /// by construction.
  static ProjectionKernel trusted(MarginalKernel<S> kernel, Index rank);

  const MarginalKernel<S>& kernel() const { return kernel_; }
  Index order() const { return kernel_.order(); }
  Index rank() const { return rank_; }

 private:
  ProjectionKernel(MarginalKernel<S> kernel, Index rank) : kernel_(std::move(kernel)), rank_(rank) {}

  MarginalKernel<S> kernel_;
  Index rank_;
};

template <Scalar S>
struct ElementarySample {
  /// Indices in the order they were drawn.
  std::vector<Index> indices;
  /// k x k lower-triangular Cholesky factor of K restricted to `indices`.
  DenseMatrix<S> factor;
  /// ln det K_Y = sum of ln of the chosen pivots.
  double log_likelihood = 0.0;
  /// Largest |sum of remaining diagonal - (k - j)| seen before any draw.
  double mass_drift = 0.0;

  /// Sorted subset with decisions over [0, n); pivots are left empty.
  Sample to_sample(Index n) const;
};

template <Scalar S>
ElementarySample<S> sample_elementary(const ProjectionKernel<S>& projection, RngStream& rng);

/// Precomputed eigendecomposition for repeated spectral sampling.
template <Scalar S>
class SpectralSampler {
 public:
  /// Throws InvalidArgument for non-Hermitian kernels and SpectrumOutOfRange
  /// if an eigenvalue lies outside [-1e-8, 1 + 1e-8].
  explicit SpectralSampler(const MarginalKernel<S>& kernel);

  /// One uniform per eigenvalue (ascending), then the elementary sampler on
  /// the chosen eigenvectors. The likelihood is that of the original kernel.
  Sample sample(RngStream& rng) const;

  const DenseVector<RealOf<S>>& eigenvalues() const { return eigenvalues_; }

 private:
  MarginalKernel<S> kernel_;
  DenseVector<RealOf<S>> eigenvalues_;
  DenseMatrix<S> eigenvectors_;
};

template <Scalar S>
Sample sample_spectral(const MarginalKernel<S>& kernel, RngStream& rng);

}  // namespace dpp

#endif  // DPPFACT_ELEMENTARY_HPP_
