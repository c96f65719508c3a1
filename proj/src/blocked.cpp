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

#include "dppfact/blocked.hpp"

#include <omp.h>

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>

#include <fmt/format.h>

#include "detail/elimination.hpp"
#include "detail/instantiate.hpp"

namespace dpp {

BlockingConfig::Resolved BlockingConfig::resolve(Index n) const {
  if (block_size < 0 || tile_size <= 0 || thread_count < 0) {
    throw Error(ErrorCode::kInvalidArgument,
                fmt::format("invalid blocking configuration (block {}, tile {}, threads {})",
                            block_size, tile_size, thread_count));
  }
  Index block = block_size > 0 ? block_size : (n <= 2000 ? 128 : 256);
  block = std::clamp<Index>(block, 1, std::max<Index>(n, 1));
  Index tile = std::max(tile_size, block);
  tile = (tile + block - 1) / block * block;
  const int threads = thread_count > 0 ? thread_count : omp_get_max_threads();
  return {block, tile, threads};
}

namespace {

enum class TaskKind { kDiagonal, kLowerPanel, kUpperPanel, kTrailing };

struct Task {
  TaskKind kind;
  Index step;
  Index ti;
  Index tj;
};

template <Scalar S>
class TileEngine {
 public:
  using Matrix = DenseMatrix<S>;

  TileEngine(Matrix& a, bool hermitian, BlockingConfig::Resolved cfg, detail::PivotProcessor<S>& proc)
      : a_(a),
        hermitian_(hermitian),
        n_(a.rows()),
        block_(cfg.block),
        tile_(cfg.tile),
        tiles_((n_ + tile_ - 1) / tile_),
        proc_(proc) {}

  std::vector<Task> build() const {
    std::vector<Task> tasks;
    const Index steps = (n_ + block_ - 1) / block_;
    for (Index s = 0; s < steps; ++s) {
      const Index k1 = std::min(n_, (s + 1) * block_);
      const Index tk = s * block_ / tile_;
      tasks.push_back({TaskKind::kDiagonal, s, tk, tk});
      for (Index ti = tk; ti < tiles_; ++ti) {
        if (std::max(k1, begin(ti)) < end(ti)) tasks.push_back({TaskKind::kLowerPanel, s, ti, tk});
      }
      if (!hermitian_) {
        for (Index tj = tk; tj < tiles_; ++tj) {
          if (std::max(k1, begin(tj)) < end(tj)) tasks.push_back({TaskKind::kUpperPanel, s, tk, tj});
        }
      }
      // Readers of the step's panel tiles are created before the updates that
      // overwrite the rest of those tiles, so the panels are not serialized.
      for (Index tj = tiles_ - 1; tj >= tk; --tj) {
        if (std::max(k1, begin(tj)) >= end(tj)) continue;
        const Index lowest = hermitian_ ? tj : tk;
        for (Index ti = tiles_ - 1; ti >= lowest; --ti) {
          if (std::max(k1, begin(ti)) < end(ti)) tasks.push_back({TaskKind::kTrailing, s, ti, tj});
        }
      }
    }
    return tasks;
  }

  void run_sequential() {
    for (const Task& task : build()) {
      execute(task);
      if (proc_.aborted()) return;
    }
  }

  void run_parallel(int threads) {
    const std::vector<Task> tasks = build();
    const auto grid = static_cast<std::size_t>(tiles_ * tiles_);
    std::vector<char> tokens(grid + 3, 0);
    char* chain = &tokens[grid];
    char* spare_a = &tokens[grid + 1];
    char* spare_b = &tokens[grid + 2];
    auto token = [&](Index i, Index j) { return &tokens[static_cast<std::size_t>(i * tiles_ + j)]; };

#pragma omp parallel num_threads(threads)
#pragma omp single
    for (const Task& t : tasks) {
      const Index tk = t.step * block_ / tile_;
      char* out = token(t.ti, t.tj);
      char* in_a = spare_a;
      char* in_b = spare_b;
      switch (t.kind) {
        case TaskKind::kDiagonal: break;
        case TaskKind::kLowerPanel:
        case TaskKind::kUpperPanel: in_a = token(tk, tk); break;
        case TaskKind::kTrailing:
          in_a = token(t.ti, tk);
          in_b = hermitian_ ? token(t.tj, tk) : token(tk, t.tj);
          break;
      }
      if (in_a == out) in_a = spare_a;
      if (in_b == out || in_b == in_a) in_b = spare_b;
      const Task task = t;
      if (t.kind == TaskKind::kDiagonal) {
#pragma omp task firstprivate(task) depend(inout : out[0], chain[0])
        guarded(task);
      } else {
#pragma omp task firstprivate(task) depend(in : in_a[0], in_b[0]) depend(inout : out[0])
        guarded(task);
      }
    }

    if (error_) std::rethrow_exception(error_);
  }

 private:
  Index begin(Index t) const { return t * tile_; }
  Index end(Index t) const { return std::min(n_, (t + 1) * tile_); }

  void guarded(const Task& task) {
    if (failed_.load(std::memory_order_acquire)) return;
    try {
      execute(task);
      if (proc_.aborted()) failed_.store(true, std::memory_order_release);
    } catch (...) {
      std::lock_guard<std::mutex> lock(error_mutex_);
      if (!error_) error_ = std::current_exception();
      failed_.store(true, std::memory_order_release);
    }
  }

  void execute(const Task& t) {
    const Index k0 = t.step * block_;
    const Index m = std::min(n_, k0 + block_) - k0;
    const Index k1 = k0 + m;
    auto diag = a_.block(k0, k0, m, m);
    switch (t.kind) {
      case TaskKind::kDiagonal:
        if (hermitian_) {
          detail::ldl_unblocked<S>(diag, k0, proc_);
        } else {
          detail::lu_unblocked<S>(diag, k0, proc_);
        }
        return;
      case TaskKind::kLowerPanel: {
        const Index r0 = std::max(k1, begin(t.ti));
        auto panel = a_.block(r0, k0, end(t.ti) - r0, m);
        if (hermitian_) {
          diag.template triangularView<Eigen::UnitLower>().adjoint().template solveInPlace<Eigen::OnTheRight>(
              panel);
          for (Index c = 0; c < m; ++c) panel.col(c) /= real_part(diag(c, c));
        } else {
          diag.template triangularView<Eigen::Upper>().template solveInPlace<Eigen::OnTheRight>(panel);
        }
        return;
      }
      case TaskKind::kUpperPanel: {
        const Index c0 = std::max(k1, begin(t.tj));
        auto panel = a_.block(k0, c0, m, end(t.tj) - c0);
        diag.template triangularView<Eigen::UnitLower>().solveInPlace(panel);
        return;
      }
      case TaskKind::kTrailing: {
        const Index r0 = std::max(k1, begin(t.ti));
        const Index c0 = std::max(k1, begin(t.tj));
        const Index rows = end(t.ti) - r0;
        const Index cols = end(t.tj) - c0;
        auto target = a_.block(r0, c0, rows, cols);
        const auto left = a_.block(r0, k0, rows, m);
        if (!hermitian_) {
          target.noalias() -= left * a_.block(k0, c0, m, cols);
          return;
        }
        Matrix scaled = a_.block(c0, k0, cols, m);
        for (Index c = 0; c < m; ++c) scaled.col(c) *= real_part(diag(c, c));
        if (t.ti == t.tj) {
          target.template triangularView<Eigen::Lower>() -= left * scaled.adjoint();
        } else {
          target.noalias() -= left * scaled.adjoint();
        }
        return;
      }
    }
  }

  Matrix& a_;
  bool hermitian_;
  Index n_;
  Index block_;
  Index tile_;
  Index tiles_;
  detail::PivotProcessor<S>& proc_;
  std::atomic<bool> failed_{false};
  std::mutex error_mutex_;
  std::exception_ptr error_;
};

template <Scalar S>
FactoredKernel<S> run_engine(DenseMatrix<S> matrix, bool hermitian, const BlockingConfig& cfg,
                             detail::PivotProcessor<S>& proc, bool parallel) {
  if (matrix.rows() != matrix.cols()) {
    throw Error(ErrorCode::kInvalidArgument, "factorization requires a square matrix");
  }
  const auto resolved = cfg.resolve(matrix.rows());
  TileEngine<S> engine(matrix, hermitian, resolved, proc);
  if (parallel) {
    engine.run_parallel(resolved.threads);
  } else {
    engine.run_sequential();
  }
  return {std::move(matrix), hermitian ? Symmetry::kHermitian : Symmetry::kGeneral};
}

template <Scalar S>
SampleResult<S> sample_with_engine(const MarginalKernel<S>& kernel, RngStream& rng,
                                   const BlockingConfig& cfg, const SamplerOptions& options,
                                   bool parallel) {
  detail::PivotProcessor<S> proc(detail::PivotMode::kSample, kernel.order(),
                                 options.tolerance<RealOf<S>>(), kernel.scale(), &rng);
  SampleResult<S> result;
  result.factor = run_engine<S>(kernel.matrix(), kernel.hermitian(), cfg, proc, parallel);
  result.sample = proc.take_sample();
  return result;
}

}  // namespace

template <Scalar S>
FactoredKernel<S> factor_blocked_lu(DenseMatrix<S> matrix, const BlockingConfig& cfg) {
  detail::PivotProcessor<S> proc(detail::PivotMode::kPlain, matrix.rows(), 0.0, 0.0);
  return run_engine<S>(std::move(matrix), false, cfg, proc, false);
}

template <Scalar S>
FactoredKernel<S> factor_blocked_ldl(DenseMatrix<S> matrix, const BlockingConfig& cfg) {
  detail::PivotProcessor<S> proc(detail::PivotMode::kPlain, matrix.rows(), 0.0, 0.0);
  return run_engine<S>(std::move(matrix), true, cfg, proc, false);
}

template <Scalar S>
FactoredKernel<S> factor_tiled(DenseMatrix<S> matrix, Symmetry symmetry, const BlockingConfig& cfg) {
  detail::PivotProcessor<S> proc(detail::PivotMode::kPlain, matrix.rows(), 0.0, 0.0);
  return run_engine<S>(std::move(matrix), symmetry == Symmetry::kHermitian, cfg, proc, true);
}

template <Scalar S>
SampleResult<S> sample_blocked(const MarginalKernel<S>& kernel, RngStream& rng,
                               const BlockingConfig& cfg, const SamplerOptions& options) {
  return sample_with_engine(kernel, rng, cfg, options, false);
}

template <Scalar S>
SampleResult<S> sample_tiled_parallel(const MarginalKernel<S>& kernel, RngStream& rng,
                                      const BlockingConfig& cfg, const SamplerOptions& options) {
  return sample_with_engine(kernel, rng, cfg, options, true);
}

#define DPP_INSTANTIATE(S)                                                                       \
  template FactoredKernel<S> factor_blocked_lu<S>(DenseMatrix<S>, const BlockingConfig&);       \
  template FactoredKernel<S> factor_blocked_ldl<S>(DenseMatrix<S>, const BlockingConfig&);      \
  template FactoredKernel<S> factor_tiled<S>(DenseMatrix<S>, Symmetry, const BlockingConfig&);  \
  template SampleResult<S> sample_blocked<S>(const MarginalKernel<S>&, RngStream&,              \
                                             const BlockingConfig&, const SamplerOptions&);     \
  template SampleResult<S> sample_tiled_parallel<S>(const MarginalKernel<S>&, RngStream&,       \
                                                    const BlockingConfig&, const SamplerOptions&);
DPP_FOR_EACH_SCALAR(DPP_INSTANTIATE)
#undef DPP_INSTANTIATE

}  // namespace dpp
