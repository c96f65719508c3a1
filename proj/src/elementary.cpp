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

#include "dppfact/elementary.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "dppfact/sampling.hpp"
#include "detail/instantiate.hpp"

namespace dpp {

namespace {

constexpr double kProjectionTolerance = 1e-8;
constexpr double kTraceTolerance = 1e-6;
constexpr double kNegativeDiagonal = -1e-8;
constexpr double kDegenerateMass = 1e-10;
constexpr double kSpectrumTolerance = 1e-8;

template <Scalar S>
Index integral_trace(const MarginalKernel<S>& kernel) {
  const double trace = static_cast<double>(real_part(kernel.matrix().trace()));
  const double rank = std::round(trace);
  if (!(std::abs(trace - rank) <= kTraceTolerance)) {
    throw Error(ErrorCode::kInvalidKernel, fmt::format("projection trace {} is not an integer", trace));
  }
  return static_cast<Index>(rank);
}

}  // namespace

template <Scalar S>
ProjectionKernel<S>::ProjectionKernel(MarginalKernel<S> kernel) : kernel_(std::move(kernel)), rank_(0) {
  if (!kernel_.hermitian()) {
    throw Error(ErrorCode::kInvalidKernel, "projection kernels must be Hermitian");
  }
  const DenseMatrix<S>& k = kernel_.matrix();
  const double defect = static_cast<double>((k * k - k).cwiseAbs().maxCoeff());
  if (k.size() > 0 && !(defect <= kProjectionTolerance)) {
    throw Error(ErrorCode::kInvalidKernel, fmt::format("kernel is not idempotent (defect {})", defect));
  }
  rank_ = integral_trace(kernel_);
}

template <Scalar S>
ProjectionKernel<S> ProjectionKernel<S>::trusted(MarginalKernel<S> kernel, Index rank) {
  return ProjectionKernel(std::move(kernel), rank);
}

template <Scalar S>
Sample ElementarySample<S>::to_sample(Index n) const {
  Sample sample;
  sample.kept = indices;
  std::sort(sample.kept.begin(), sample.kept.end());
  sample.decisions.assign(static_cast<std::size_t>(n), false);
  for (Index j : sample.kept) sample.decisions[static_cast<std::size_t>(j)] = true;
  sample.log_likelihood = log_likelihood;
  return sample;
}

template <Scalar S>
ElementarySample<S> sample_elementary(const ProjectionKernel<S>& projection, RngStream& rng) {
  using Real = RealOf<S>;
  const DenseMatrix<S>& kernel = projection.kernel().matrix();
  const Index n = projection.order();
  const Index k = projection.rank();

  std::vector<Index> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), Index{0});
  std::vector<double> d(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) d[i] = real_part(kernel(i, i));
  // Rows follow `perm`; column j holds the j-th Cholesky column.
  DenseMatrix<S> lower = DenseMatrix<S>::Zero(n, k);

  ElementarySample<S> out;
  for (Index j = 0; j < k; ++j) {
    double total = 0.0;
    double raw = 0.0;
    for (Index t = j; t < n; ++t) {
      raw += d[t];
      if (d[t] < kNegativeDiagonal) {
        throw Error(ErrorCode::kNegativeDiagonal,
                    fmt::format("remaining diagonal entry {} is {}", perm[t], d[t]));
      }
      total += std::max(d[t], 0.0);
    }
    out.mass_drift = std::max(out.mass_drift, std::abs(raw - static_cast<double>(k - j)));
    if (!(total >= kDegenerateMass)) {
      throw Error(ErrorCode::kDegenerateMass,
                  fmt::format("remaining mass {} before drawing pivot {} of {}", total, j, k));
    }

    // Inverse CDF, normalised by the actual remaining mass.
    const double target = rng.uniform() * total;
    Index chosen = -1;
    double cumulative = 0.0;
    for (Index t = j; t < n; ++t) {
      if (d[t] <= 0.0) continue;
      chosen = t;
      cumulative += d[t];
      if (target < cumulative) break;
    }

    std::swap(perm[j], perm[chosen]);
    std::swap(d[j], d[chosen]);
    lower.row(j).head(j).swap(lower.row(chosen).head(j));

    const double pivot = d[j];
    out.log_likelihood += std::log(pivot);
    const Real root = static_cast<Real>(std::sqrt(pivot));
    lower(j, j) = S(root);
    const Index m = n - j - 1;
    if (m == 0) continue;
    DenseVector<S> column(m);
    for (Index i = 0; i < m; ++i) column(i) = kernel(perm[j + 1 + i], perm[j]);
    if (j > 0) column.noalias() -= lower.block(j + 1, 0, m, j) * lower.row(j).head(j).adjoint();
    lower.col(j).tail(m) = column / root;
    for (Index i = 0; i < m; ++i) d[j + 1 + i] -= static_cast<double>(std::norm(lower(j + 1 + i, j)));
  }

  out.indices.assign(perm.begin(), perm.begin() + k);
  out.factor = lower.topRows(k).template triangularView<Eigen::Lower>();
  return out;
}

template <Scalar S>
SpectralSampler<S>::SpectralSampler(const MarginalKernel<S>& kernel) : kernel_(kernel) {
  if (!kernel.hermitian()) {
    throw Error(ErrorCode::kInvalidArgument, "spectral sampling requires a Hermitian kernel");
  }
  Eigen::SelfAdjointEigenSolver<DenseMatrix<S>> solver(kernel.matrix());
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::kSpectrumOutOfRange, "eigendecomposition did not converge");
  }
  eigenvalues_ = solver.eigenvalues();
  eigenvectors_ = solver.eigenvectors();
  for (Index j = 0; j < eigenvalues_.size(); ++j) {
    const double lambda = eigenvalues_(j);
    if (!(lambda >= -kSpectrumTolerance && lambda <= 1.0 + kSpectrumTolerance)) {
      throw Error(ErrorCode::kSpectrumOutOfRange, fmt::format("eigenvalue {} = {}", j, lambda));
    }
  }
}

template <Scalar S>
Sample SpectralSampler<S>::sample(RngStream& rng) const {
  const Index n = kernel_.order();
  std::vector<Index> chosen;
  for (Index j = 0; j < n; ++j) {
    const double p = std::clamp(static_cast<double>(eigenvalues_(j)), 0.0, 1.0);
    if (rng.uniform() < p) chosen.push_back(j);
  }
  const auto k = static_cast<Index>(chosen.size());
  DenseMatrix<S> basis(n, k);
  for (Index c = 0; c < k; ++c) basis.col(c) = eigenvectors_.col(chosen[c]);
  DenseMatrix<S> gram = basis * basis.adjoint();
  for (Index i = 0; i < n; ++i) gram(i, i) = std::clamp(real_part(gram(i, i)), RealOf<S>(0), RealOf<S>(1));
  auto projection = ProjectionKernel<S>::trusted(MarginalKernel<S>::hermitian_from_lower(std::move(gram)), k);

  Sample sample = sample_elementary(projection, rng).to_sample(n);
  const Sample replay = replay_decisions(kernel_, sample.decisions);
  sample.log_likelihood = replay.log_likelihood;
  sample.pivots = replay.pivots;
  return sample;
}

template <Scalar S>
Sample sample_spectral(const MarginalKernel<S>& kernel, RngStream& rng) {
  return SpectralSampler<S>(kernel).sample(rng);
}

#define DPP_INSTANTIATE(S)                                                                  \
  template class ProjectionKernel<S>;                                                       \
  template struct ElementarySample<S>;                                                      \
  template ElementarySample<S> sample_elementary<S>(const ProjectionKernel<S>&, RngStream&); \
  template class SpectralSampler<S>;                                                        \
  template Sample sample_spectral<S>(const MarginalKernel<S>&, RngStream&);
DPP_FOR_EACH_SCALAR(DPP_INSTANTIATE)
#undef DPP_INSTANTIATE

}  // namespace dpp
