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

#include "dppfact/builders.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <fmt/format.h>

#include "detail/instantiate.hpp"

namespace dpp {

namespace {

template <Scalar S>
S gaussian_entry(RngStream& rng) {
  if constexpr (kIsComplex<S>) {
    const double re = rng.gaussian();
    const double im = rng.gaussian();
    return S(RealOf<S>(re / std::numbers::sqrt2), RealOf<S>(im / std::numbers::sqrt2));
  } else {
    return S(rng.gaussian());
  }
}

// Unit-modulus scalar: a uniform phase, or a random sign for real types.
template <Scalar S>
S random_phase(RngStream& rng) {
  const double u = rng.uniform();
  if constexpr (kIsComplex<S>) {
    const double angle = 2.0 * std::numbers::pi * u;
    return S(RealOf<S>(std::cos(angle)), RealOf<S>(std::sin(angle)));
  } else {
    return u < 0.5 ? S(-1) : S(1);
  }
}

template <Scalar S>
MarginalKernel<S> clamped_hermitian(DenseMatrix<S> lower) {
  for (Index i = 0; i < lower.rows(); ++i) {
    lower(i, i) = S(std::clamp(real_part(lower(i, i)), RealOf<S>(0), RealOf<S>(1)));
  }
  return MarginalKernel<S>::hermitian_from_lower(std::move(lower));
}

}  // namespace

template <Scalar S>
DenseMatrix<S> random_unitary(Index n, RngStream& rng) {
  DenseMatrix<S> z(n, n);
  for (Index j = 0; j < n; ++j) {
    for (Index i = 0; i < n; ++i) z(i, j) = gaussian_entry<S>(rng);
  }
  Eigen::HouseholderQR<DenseMatrix<S>> qr(z);
  DenseMatrix<S> q = qr.householderQ() * DenseMatrix<S>::Identity(n, n);
  for (Index j = 0; j < n; ++j) {
    const S r = qr.matrixQR()(j, j);
    const auto magnitude = std::abs(r);
    if (magnitude > 0) q.col(j) *= r / magnitude;
  }
  return q;
}

std::vector<double> random_spectrum(Index n, RngStream& rng) {
  std::vector<double> spectrum(static_cast<std::size_t>(n));
  for (double& lambda : spectrum) lambda = rng.uniform();
  return spectrum;
}

template <Scalar S>
MarginalKernel<S> random_admissible_hermitian(Index n, const std::vector<double>& spectrum, RngStream& rng) {
  if (static_cast<Index>(spectrum.size()) != n) {
    throw Error(ErrorCode::kInvalidArgument, fmt::format("spectrum has {} values, expected {}", spectrum.size(), n));
  }
  DenseVector<RealOf<S>> lambda(n);
  for (Index j = 0; j < n; ++j) {
    if (!(spectrum[j] >= 0.0 && spectrum[j] <= 1.0)) {
      throw Error(ErrorCode::kInvalidArgument, fmt::format("eigenvalue {} outside [0, 1]", spectrum[j]));
    }
    lambda(j) = static_cast<RealOf<S>>(spectrum[j]);
  }
  const DenseMatrix<S> q = random_unitary<S>(n, rng);
  return clamped_hermitian<S>(q * lambda.asDiagonal() * q.adjoint());
}

template <Scalar S>
MarginalKernel<S> random_admissible_nonhermitian(Index n, RngStream& rng) {
  const MarginalKernel<S> source = random_admissible_hermitian<S>(n, random_spectrum(n, rng), rng);
  std::vector<S> scale(static_cast<std::size_t>(n));
  for (S& s : scale) {
    const double modulus = 0.5 + 1.5 * rng.uniform();
    s = random_phase<S>(rng) * RealOf<S>(modulus);
  }
  DenseMatrix<S> k = source.matrix();
  for (Index j = 0; j < n; ++j) {
    for (Index i = 0; i < n; ++i) {
      if (i != j) k(i, j) = k(i, j) * scale[j] / scale[i];
    }
  }
  return MarginalKernel<S>(std::move(k), Symmetry::kGeneral);
}

template <Scalar S>
ProjectionKernel<S> random_projection(Index n, Index k, RngStream& rng) {
  if (k < 0 || k > n) throw Error(ErrorCode::kInvalidArgument, fmt::format("rank {} outside [0, {}]", k, n));
  const DenseMatrix<S> q = random_unitary<S>(n, rng);
  const auto basis = q.leftCols(k);
  return ProjectionKernel<S>::trusted(clamped_hermitian<S>(basis * basis.adjoint()), k);
}

template <Scalar S>
MarginalKernel<S> marginal_from_lensemble(const DenseMatrix<S>& l) {
  const Index n = l.rows();
  if (l.cols() != n) throw Error(ErrorCode::kIndefiniteL, "L-ensemble kernel must be square");
  const double scale = std::max(1.0, n == 0 ? 0.0 : static_cast<double>(l.cwiseAbs().maxCoeff()));
  if (n > 0 && static_cast<double>((l - l.adjoint()).cwiseAbs().maxCoeff()) > 1e-12 * scale) {
    throw Error(ErrorCode::kIndefiniteL, "L-ensemble kernel is not Hermitian");
  }
  const DenseMatrix<S> symmetric = (l + l.adjoint()) / RealOf<S>(2);
  Eigen::SelfAdjointEigenSolver<DenseMatrix<S>> eig(symmetric, Eigen::EigenvaluesOnly);
  if (n > 0 && eig.eigenvalues().minCoeff() < -1e-10) {
    throw Error(ErrorCode::kIndefiniteL,
                fmt::format("L-ensemble kernel has eigenvalue {}", double(eig.eigenvalues().minCoeff())));
  }
  const DenseMatrix<S> identity = DenseMatrix<S>::Identity(n, n);
  const DenseMatrix<S> inverse = (symmetric + identity).llt().solve(identity);
  const DenseMatrix<S> k = identity - inverse;
  return clamped_hermitian<S>((k + k.adjoint()) / RealOf<S>(2));
}

SparseKernel<double> laplacian2d_kernel(Index width, Index height, double sigma) {
  if (!(sigma > 0.0 && sigma <= 1.0)) {
    throw Error(ErrorCode::kInvalidSigma, fmt::format("sigma = {} outside (0, 1]", sigma));
  }
  if (width < 1 || height < 1) {
    throw Error(ErrorCode::kInvalidArgument, fmt::format("invalid grid {}x{}", width, height));
  }
  std::vector<SparseKernel<double>::Triplet> triplets;
  for (Index y = 0; y < height; ++y) {
    for (Index x = 0; x < width; ++x) {
      const Index v = y * width + x;
      triplets.push_back({v, v, sigma / 2.0});
      if (x + 1 < width) triplets.push_back({v + 1, v, -sigma / 8.0});
      if (y + 1 < height) triplets.push_back({v + width, v, -sigma / 8.0});
    }
  }
  return SparseKernel<double>::from_triplets(width * height, std::move(triplets));
}

template <Scalar S>
SparseKernel<S> random_sparse_admissible(Index n, double density, RngStream& rng) {
  using Triplet = typename SparseKernel<S>::Triplet;
  std::vector<Triplet> off;
  std::vector<double> radius(static_cast<std::size_t>(n), 0.0);
  for (Index j = 0; j < n; ++j) {
    for (Index i = j + 1; i < n; ++i) {
      if (rng.uniform() >= density) continue;
      const double magnitude = 0.2 + 0.8 * rng.uniform();
      off.push_back({i, j, random_phase<S>(rng) * RealOf<S>(magnitude)});
      radius[i] += magnitude;
      radius[j] += magnitude;
    }
  }
  const double widest = radius.empty() ? 0.0 : *std::max_element(radius.begin(), radius.end());
  const double shrink = widest > 0.45 ? 0.45 / widest : 1.0;
  std::vector<Triplet> triplets;
  for (Triplet& t : off) {
    t.value *= RealOf<S>(shrink);
    triplets.push_back(t);
  }
  for (Index j = 0; j < n; ++j) {
    const double r = radius[j] * shrink;
    triplets.push_back({j, j, S(RealOf<S>(r + (1.0 - 2.0 * r) * rng.uniform()))});
  }
  return SparseKernel<S>::from_triplets(n, std::move(triplets));
}

template <Scalar S>
MarginalKernel<S> diagonally_dominant_kernel(Index n, Symmetry symmetry, RngStream& rng) {
  DenseMatrix<S> k(n, n);
  const double bound = 0.4 / std::max<Index>(n, 1);
  for (Index j = 0; j < n; ++j) {
    k(j, j) = S(RealOf<S>(0.45 + 0.1 * rng.uniform()));
    for (Index i = j + 1; i < n; ++i) {
      k(i, j) = random_phase<S>(rng) * RealOf<S>(bound * rng.uniform());
      k(j, i) = conjugate(k(i, j));
    }
  }
  if (symmetry == Symmetry::kHermitian) return MarginalKernel<S>(std::move(k), Symmetry::kHermitian);
  std::vector<S> scale(static_cast<std::size_t>(n));
  for (S& s : scale) s = random_phase<S>(rng) * RealOf<S>(0.5 + 1.5 * rng.uniform());
  for (Index j = 0; j < n; ++j) {
    for (Index i = 0; i < n; ++i) {
      if (i != j) k(i, j) = k(i, j) * scale[j] / scale[i];
    }
  }
  return MarginalKernel<S>(std::move(k), Symmetry::kGeneral);
}

#define DPP_INSTANTIATE(S)                                                                              \
  template DenseMatrix<S> random_unitary<S>(Index, RngStream&);                                         \
  template MarginalKernel<S> random_admissible_hermitian<S>(Index, const std::vector<double>&, RngStream&); \
  template MarginalKernel<S> random_admissible_nonhermitian<S>(Index, RngStream&);                     \
  template ProjectionKernel<S> random_projection<S>(Index, Index, RngStream&);                          \
  template MarginalKernel<S> marginal_from_lensemble<S>(const DenseMatrix<S>&);                         \
  template SparseKernel<S> random_sparse_admissible<S>(Index, double, RngStream&);                      \
  template MarginalKernel<S> diagonally_dominant_kernel<S>(Index, Symmetry, RngStream&);
DPP_FOR_EACH_SCALAR(DPP_INSTANTIATE)
#undef DPP_INSTANTIATE

}  // namespace dpp
