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

// Shared elimination machinery. Every sampler in the library is an unpivoted
// LU or LDL^H factorization whose pivots pass through a PivotProcessor before
// they are used; the processor decides inclusion, shifts excluded pivots by
// -1 and accumulates the likelihood.

#ifndef DPPFACT_DETAIL_ELIMINATION_HPP_
#define DPPFACT_DETAIL_ELIMINATION_HPP_

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "dppfact/common.hpp"

namespace dpp::detail {

enum class PivotMode {
  kSample,  // Bernoulli draw, one uniform per pivot
  kMap,     // include iff p >= 1/2
  kForced,  // replay a fixed decision vector; no range errors
  kPlain,   // ordinary factorization, pivots untouched
};

template <Scalar S>
class PivotProcessor {
 public:
  using Real = RealOf<S>;

  PivotProcessor(PivotMode mode, Index n, double tolerance, double kernel_scale,
                 RngStream* rng = nullptr, const std::vector<bool>* forced = nullptr)
      : mode_(mode),
        tolerance_(tolerance),
        imag_tolerance_(tolerance * std::max(1.0, kernel_scale)),
        rng_(rng),
        forced_(forced) {
    if (mode_ != PivotMode::kPlain) {
      sample_.pivots.assign(static_cast<std::size_t>(n), 0.0);
      sample_.decisions.assign(static_cast<std::size_t>(n), false);
    }
  }

  PivotMode mode() const { return mode_; }
  bool aborted() const { return aborted_; }

  /// Non-Hermitian pivot: the imaginary part must vanish up to tolerance.
  S general(Index j, S pivot) {
    if (mode_ == PivotMode::kPlain) {
      check_nonzero(j, std::abs(pivot));
      return pivot;
    }
    if constexpr (kIsComplex<S>) {
      if (mode_ != PivotMode::kForced && !(std::abs(pivot.imag()) <= imag_tolerance_)) {
        throw Error(ErrorCode::kNonRealPivot,
                    fmt::format("pivot {} has imaginary part {}", j, double(pivot.imag())));
      }
    }
    return decide(j, real_part(pivot)) ? pivot : pivot - S(1);
  }

  /// Hermitian pivot; only the real part is meaningful.
  Real hermitian(Index j, Real pivot) {
    if (mode_ == PivotMode::kPlain) {
      check_nonzero(j, std::abs(pivot));
      return pivot;
    }
    return decide(j, pivot) ? pivot : pivot - Real(1);
  }

  /// Folds the decisions into `kept`. `labels`, when non-empty, maps pivot
  /// order to original labels; pivots and decisions are then reindexed.
  Sample take_sample(const std::vector<Index>& labels = {}) {
    Sample out = std::move(sample_);
    if (!labels.empty()) {
      std::vector<double> pivots(out.pivots.size());
      std::vector<bool> decisions(out.decisions.size());
      for (std::size_t k = 0; k < labels.size(); ++k) {
        const auto label = static_cast<std::size_t>(labels[k]);
        pivots[label] = out.pivots[k];
        decisions[label] = out.decisions[k];
      }
      out.pivots = std::move(pivots);
      out.decisions = std::move(decisions);
    }
    out.kept.clear();
    for (std::size_t j = 0; j < out.decisions.size(); ++j) {
      if (out.decisions[j]) out.kept.push_back(static_cast<Index>(j));
    }
    return out;
  }

 private:
  void check_nonzero(Index j, double magnitude) const {
    if (!(magnitude >= 1e-300)) {
      throw Error(ErrorCode::kZeroPivot, fmt::format("pivot {} has magnitude {}", j, magnitude));
    }
  }

  bool decide(Index j, Real pivot) {
    const double re = static_cast<double>(pivot);
    if (mode_ != PivotMode::kForced && !(re >= -tolerance_ && re <= 1.0 + tolerance_)) {
      throw Error(ErrorCode::kPivotOutOfRange,
                  fmt::format("conditional probability {} of index {} is outside [0, 1]", re, j));
    }
    const double p = std::isnan(re) ? 0.0 : std::clamp(re, 0.0, 1.0);
    bool keep = false;
    switch (mode_) {
      case PivotMode::kSample: keep = rng_->uniform() < p; break;
      case PivotMode::kMap: keep = p >= 0.5; break;
      case PivotMode::kForced: keep = (*forced_)[static_cast<std::size_t>(j)]; break;
      case PivotMode::kPlain: break;
    }
    const double mass = keep ? p : 1.0 - p;
    if (mass == 0.0) {
      aborted_ = true;
      sample_.log_likelihood = -std::numeric_limits<double>::infinity();
    } else if (!aborted_) {
      sample_.log_likelihood += keep ? std::log(p) : std::log1p(-p);
    }
    sample_.pivots[static_cast<std::size_t>(j)] = p;
    sample_.decisions[static_cast<std::size_t>(j)] = keep;
    return keep;
  }

  PivotMode mode_;
  double tolerance_;
  double imag_tolerance_;
  RngStream* rng_;
  const std::vector<bool>* forced_;
  bool aborted_ = false;
  Sample sample_;
};

template <Scalar S>
using MatrixRef = Eigen::Ref<DenseMatrix<S>>;

/// Right-looking unblocked LU with DPP pivot processing. `offset` is the
/// ground-set index of A(0, 0).
template <Scalar S>
void lu_unblocked(MatrixRef<S> a, Index offset, PivotProcessor<S>& proc) {
  const Index n = a.rows();
  for (Index j = 0; j < n; ++j) {
    a(j, j) = proc.general(offset + j, a(j, j));
    if (proc.aborted()) return;
    const Index m = n - j - 1;
    if (m == 0) break;
    const S pivot = a(j, j);
    a.col(j).tail(m) /= pivot;
    a.bottomRightCorner(m, m).noalias() -= a.col(j).tail(m) * a.row(j).tail(m);
  }
}

/// Right-looking unblocked LDL^H on the lower triangle. Stored pivots are
/// real: the imaginary part of every diagonal entry is discarded when the
/// pivot is processed.
template <Scalar S>
void ldl_unblocked(MatrixRef<S> a, Index offset, PivotProcessor<S>& proc) {
  using Real = RealOf<S>;
  const Index n = a.rows();
  for (Index j = 0; j < n; ++j) {
    const Real d = proc.hermitian(offset + j, real_part(a(j, j)));
    a(j, j) = S(d);
    if (proc.aborted()) return;
    const Index m = n - j - 1;
    if (m == 0) break;
    auto column = a.col(j).tail(m);
    for (Index c = 0; c < m; ++c) {
      const S scale = conjugate(column(c)) / d;
      a.col(j + 1 + c).tail(m - c) -= column.tail(m - c) * scale;
    }
    column /= d;
  }
}

}  // namespace dpp::detail

#endif  // DPPFACT_DETAIL_ELIMINATION_HPP_
