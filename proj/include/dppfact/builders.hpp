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

// Kernel constructors. Random kernels are drawn from an RngStream so that a
// seed fully determines them.

#ifndef DPPFACT_BUILDERS_HPP_
#define DPPFACT_BUILDERS_HPP_

#include "dppfact/elementary.hpp"
#include "dppfact/sparse.hpp"

namespace dpp {

/// Haar-distributed unitary (orthogonal for real S): QR of a Gaussian
/// matrix with the phases of R's diagonal folded back into Q.
template <Scalar S>
DenseMatrix<S> random_unitary(Index n, RngStream& rng);

/// Eigenvalues uniform on [0, 1).
std::vector<double> random_spectrum(Index n, RngStream& rng);

/// Q diag(spectrum) Q^H with a random unitary Q.
template <Scalar S>
MarginalKernel<S> random_admissible_hermitian(Index n, const std::vector<double>& spectrum, RngStream& rng);

/// D^{-1} K D for a random admissible Hermitian K and a random diagonal D
/// with |D_jj| uniform on [0.5, 2] (uniform phase for complex S, random sign
/// for real S). Same DPP as K.
template <Scalar S>
MarginalKernel<S> random_admissible_nonhermitian(Index n, RngStream& rng);

/// Q_{:, :k} Q_{:, :k}^H for a random unitary Q.
template <Scalar S>
ProjectionKernel<S> random_projection(Index n, Index k, RngStream& rng);

/// K = I - (L + I)^{-1}. Throws IndefiniteL if L has an eigenvalue below
/// -1e-10 or is not Hermitian.
template <Scalar S>
MarginalKernel<S> marginal_from_lensemble(const DenseMatrix<S>& l);

/// (sigma / 8) times the 5-point negative Laplacian with Dirichlet boundary
/// on a width x height grid; vertex (x, y) is y * width + x. The spectrum
/// lies in (0, sigma). Throws InvalidSigma unless 0 < sigma <= 1.
SparseKernel<double> laplacian2d_kernel(Index width, Index height, double sigma);

/// Random Hermitian kernel whose off-diagonal pattern keeps each lower
/// entry with probability `density`. Gershgorin discs lie inside [0, 1].
template <Scalar S>
SparseKernel<S> random_sparse_admissible(Index n, double density, RngStream& rng);

/// Dense Gershgorin-admissible kernel for benchmarks, O(n^2) to build:
/// diagonal in [0.45, 0.55] and off-diagonal row sums below 0.4. General
/// kernels are a diagonal similarity of a Hermitian one.
template <Scalar S>
MarginalKernel<S> diagonally_dominant_kernel(Index n, Symmetry symmetry, RngStream& rng);

}  // namespace dpp

#endif  // DPPFACT_BUILDERS_HPP_
