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

#include "dppfact/aztec.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include <Eigen/LU>
#include <fmt/format.h>

#include "detail/elimination.hpp"

namespace dpp {

using Complex = std::complex<double>;

const char* to_string(TileOrientation orientation) {
  switch (orientation) {
    case TileOrientation::kLeft: return "left";
    case TileOrientation::kRight: return "right";
    case TileOrientation::kUp: return "up";
    case TileOrientation::kDown: return "down";
  }
  return "unknown";
}

AztecDiamond::AztecDiamond(Index order) : order_(order) {
  if (order < 1) throw Error(ErrorCode::kInvalidArgument, fmt::format("invalid diamond order {}", order));
  auto inside = [order](Index x, Index y) { return std::abs(2 * x + 1) + std::abs(2 * y + 1) <= 2 * order; };

  std::map<std::array<Index, 2>, Index> black_label;
  std::vector<std::array<Index, 2>> blacks;
  for (Index y = -order; y < order; ++y) {
    for (Index x = -order; x < order; ++x) {
      if (!inside(x, y)) continue;
      if ((x + y) % 2 == 0) {
        whites_.push_back({x, y});
      } else {
        black_label.emplace(std::array<Index, 2>{x, y}, static_cast<Index>(blacks.size()));
        blacks.push_back({x, y});
      }
    }
  }

  struct Neighbour {
    Index dx, dy;
    TileOrientation orientation;
    Complex weight;
  };
  const Neighbour neighbours[] = {
      {-1, 0, TileOrientation::kRight, Complex(1, 0)},
      {1, 0, TileOrientation::kLeft, Complex(1, 0)},
      {0, -1, TileOrientation::kUp, Complex(0, 1)},
      {0, 1, TileOrientation::kDown, Complex(0, 1)},
  };
  std::vector<Index> last(blacks.size(), -1);
  for (Index w = 0; w < static_cast<Index>(whites_.size()); ++w) {
    const auto [x, y] = whites_[w];
    for (const Neighbour& nb : neighbours) {
      const auto it = black_label.find({x + nb.dx, y + nb.dy});
      if (it == black_label.end()) continue;
      last[it->second] = static_cast<Index>(dominoes_.size());
      dominoes_.push_back({w, it->second, nb.orientation, nb.weight});
    }
  }

  std::vector<Index> by_last(blacks.size());
  for (std::size_t b = 0; b < blacks.size(); ++b) by_last[b] = static_cast<Index>(b);
  std::sort(by_last.begin(), by_last.end(), [&](Index a, Index b) { return last[a] < last[b]; });
  std::vector<Index> relabel(blacks.size());
  for (std::size_t k = 0; k < by_last.size(); ++k) {
    relabel[by_last[k]] = static_cast<Index>(k);
    blacks_.push_back(blacks[by_last[k]]);
  }
  for (Domino& domino : dominoes_) domino.black = relabel[domino.black];
}

DenseMatrix<Complex> AztecDiamond::kasteleyn() const {
  const Index r = squares_per_colour();
  DenseMatrix<Complex> m = DenseMatrix<Complex>::Zero(r, r);
  for (const Domino& domino : dominoes_) m(domino.white, domino.black) = domino.weight;
  return m;
}

DenseMatrix<Complex> kasteleyn_inverse(const AztecDiamond& diamond) {
  // |G[b][w]| spans tens of orders of magnitude on large diamonds (about
  // 1e21 at d = 80), so a plain inverse of M loses every small entry. We
  // invert the gauged matrix diag(e^-psi) M diag(e^phi) instead, refitting
  // phi and psi until the gauged inverse has entries of order one, then undo
  // the gauge. A single pass is exact for small diamonds.
  constexpr int kMaxPasses = 8;
  const DenseMatrix<Complex> m = diamond.kasteleyn();
  const Index r = m.rows();
  DenseVector<double> phi = DenseVector<double>::Zero(r);
  DenseVector<double> psi = DenseVector<double>::Zero(r);
  DenseMatrix<Complex> g;
  for (int pass = 0;; ++pass) {
    DenseMatrix<Complex> gauged(r, r);
    for (Index b = 0; b < r; ++b) {
      for (Index w = 0; w < r; ++w) gauged(w, b) = m(w, b) * std::exp(phi(b) - psi(w));
    }
    Eigen::PartialPivLU<Eigen::Ref<DenseMatrix<Complex>>> lu(gauged);
    const double rcond = lu.rcond();
    if (rcond > 0.0) g = lu.inverse();
    if (!(rcond > 0.0) || !g.allFinite()) {
      throw Error(ErrorCode::kSingularKasteleyn,
                  fmt::format("Kasteleyn matrix of order {} has reciprocal condition {}", diamond.order(), rcond));
    }
    const double largest = g.cwiseAbs().maxCoeff();
    if (largest <= 2.0 || pass + 1 == kMaxPasses) break;

    // log|G[b][w]| = log|g[b][w]| + phi(b) - psi(w); rebalance on its maxima.
    DenseMatrix<double> lg(r, r);
    for (Index w = 0; w < r; ++w) {
      for (Index b = 0; b < r; ++b) lg(b, w) = std::log(std::abs(g(b, w))) + phi(b) - psi(w);
    }
    phi = lg.rowwise().maxCoeff();
    lg.colwise() -= phi;
    psi = -lg.colwise().maxCoeff().transpose();
  }
  for (Index w = 0; w < r; ++w) {
    for (Index b = 0; b < r; ++b) g(b, w) *= std::exp(phi(b) - psi(w));
  }
  return g;
}

MarginalKernel<Complex> aztec_kernel(const AztecDiamond& diamond) {
  const DenseMatrix<Complex> g = kasteleyn_inverse(diamond);
  const auto& dominoes = diamond.dominoes();
  const Index n = diamond.domino_count();
  DenseMatrix<Complex> kernel(n, n);
  for (Index f = 0; f < n; ++f) {
    const Index b = dominoes[f].black;
    for (Index e = 0; e < n; ++e) kernel(e, f) = dominoes[e].weight * g(b, dominoes[e].white);
  }
  for (Index e = 0; e < n; ++e) {
    const Complex p = kernel(e, e);
    if (!(std::abs(p.imag()) <= 1e-10) || !(p.real() >= -1e-10) || !(p.real() <= 1.0 + 1e-10)) {
      throw Error(ErrorCode::kInvalidKernel,
                  fmt::format("domino {} has edge probability ({}, {})", e, p.real(), p.imag()));
    }
    kernel(e, e) = Complex(std::clamp(p.real(), 0.0, 1.0), 0.0);
  }
  return MarginalKernel<Complex>(std::move(kernel), Symmetry::kGeneral);
}

template <Scalar S>
Sample sample_kenyon(const AztecDiamond& diamond, const DenseMatrix<Complex>& inverse, RngStream& rng,
                     const KenyonOptions& options) {
  static_assert(kIsComplex<S>, "the Kenyon kernel is complex");
  const auto& dominoes = diamond.dominoes();
  const Index n = diamond.domino_count();
  const Index r = diamond.squares_per_colour();
  if (inverse.rows() != r || inverse.cols() != r) {
    throw Error(ErrorCode::kInvalidArgument, "inverse Kasteleyn matrix has the wrong shape");
  }
  if (options.block_size < 1) throw Error(ErrorCode::kInvalidArgument, "block size must be positive");

  DenseMatrix<S> g = inverse.template cast<S>();
  std::vector<Index> last(static_cast<std::size_t>(r), -1);
  for (Index e = 0; e < n; ++e) last[dominoes[e].black] = e;
  std::vector<S> weight(static_cast<std::size_t>(n));
  for (Index e = 0; e < n; ++e) weight[e] = S(dominoes[e].weight);

  detail::PivotProcessor<S> proc(detail::PivotMode::kSample, n,
                                 options.sampler.tolerance<RealOf<S>>(),
                                 static_cast<double>(g.cwiseAbs().maxCoeff()), &rng);
  Index first_black = 0;
  for (Index e0 = 0; e0 < n; e0 += options.block_size) {
    const Index e1 = std::min(n, e0 + options.block_size);
    const Index m = e1 - e0;
    DenseMatrix<S> block(m, m);
    for (Index j = 0; j < m; ++j) {
      const Index b = dominoes[e0 + j].black;
      for (Index i = 0; i < m; ++i) block(i, j) = weight[e0 + i] * g(b, dominoes[e0 + i].white);
    }
    detail::lu_unblocked<S>(block, e0, proc);
    if (e1 == n) break;

    while (last[first_black] < e1) ++first_black;
    const Index first_white = dominoes[e1].white;
    const Index nb = r - first_black;
    const Index nw = r - first_white;
    DenseMatrix<S> left(nb, m);
    for (Index j = 0; j < m; ++j) {
      left.col(j) = g.block(first_black, dominoes[e0 + j].white, nb, 1) * weight[e0 + j];
    }
    block.template triangularView<Eigen::UnitLower>().transpose().template solveInPlace<Eigen::OnTheRight>(left);
    DenseMatrix<S> right(m, nw);
    for (Index i = 0; i < m; ++i) right.row(i) = g.row(dominoes[e0 + i].black).segment(first_white, nw);
    block.template triangularView<Eigen::Upper>().transpose().solveInPlace(right);
    g.block(first_black, first_white, nb, nw).noalias() -= left * right;
  }
  return proc.take_sample();
}

TilingReport decode_tiling(const AztecDiamond& diamond, const std::vector<Index>& kept) {
  TilingReport report;
  const Index r = diamond.squares_per_colour();
  std::vector<int> white_cover(static_cast<std::size_t>(r), 0);
  std::vector<int> black_cover(static_cast<std::size_t>(r), 0);
  for (Index e : kept) {
    if (e < 0 || e >= diamond.domino_count()) {
      report.reason = fmt::format("domino index {} out of range", e);
      return report;
    }
    const Domino& domino = diamond.dominoes()[e];
    ++white_cover[domino.white];
    ++black_cover[domino.black];
    ++report.orientation_counts[static_cast<std::size_t>(domino.orientation)];
  }
  for (Index s = 0; s < r; ++s) {
    for (int count : {white_cover[s], black_cover[s]}) {
      if (count == 0) ++report.uncovered;
      if (count > 1) ++report.overcovered;
    }
  }
  report.valid = report.uncovered == 0 && report.overcovered == 0;
  if (!report.valid) {
    report.reason = fmt::format("{} squares uncovered, {} covered more than once", report.uncovered,
                                report.overcovered);
  }
  return report;
}

double aztec_log_likelihood(Index order) {
  return -static_cast<double>(order * (order + 1)) * std::numbers::ln2 / 2.0;
}

template Sample sample_kenyon<std::complex<float>>(const AztecDiamond&, const DenseMatrix<Complex>&, RngStream&,
                                                   const KenyonOptions&);
template Sample sample_kenyon<std::complex<double>>(const AztecDiamond&, const DenseMatrix<Complex>&, RngStream&,
                                                    const KenyonOptions&);

}  // namespace dpp
