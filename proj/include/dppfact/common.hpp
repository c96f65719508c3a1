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

#ifndef DPPFACT_COMMON_HPP_
#define DPPFACT_COMMON_HPP_

#include <complex>
#include <concepts>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

#include <Eigen/Core>

namespace dpp {

using Index = std::int64_t;

template <class T>
struct ScalarTraits {
  using Real = T;
  static constexpr bool kIsComplex = false;
};

template <class T>
struct ScalarTraits<std::complex<T>> {
  using Real = T;
  static constexpr bool kIsComplex = true;
};

template <class S>
using RealOf = typename ScalarTraits<S>::Real;

template <class S>
inline constexpr bool kIsComplex = ScalarTraits<S>::kIsComplex;

/// The four scalar types every dense and sparse routine is instantiated for.
template <class S>
concept Scalar = std::same_as<RealOf<S>, float> || std::same_as<RealOf<S>, double>;

/// Column-major dense storage used by all kernels and factors.
template <class S>
using DenseMatrix = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic, Eigen::ColMajor>;

template <class S>
using DenseVector = Eigen::Matrix<S, Eigen::Dynamic, 1>;

template <class S>
inline RealOf<S> real_part(const S& value) {
  if constexpr (kIsComplex<S>) {
    return value.real();
  } else {
    return value;
  }
}

template <class S>
inline RealOf<S> imag_part(const S& value) {
  if constexpr (kIsComplex<S>) {
    return value.imag();
  } else {
    return RealOf<S>(0);
  }
}

template <class S>
inline S conjugate(const S& value) {
  if constexpr (kIsComplex<S>) {
    return std::conj(value);
  } else {
    return value;
  }
}

enum class ErrorCode {
  kPivotOutOfRange,
  kNonRealPivot,
  kSingularConditioning,
  kZeroPivot,
  kNegativeDiagonal,
  kDegenerateMass,
  kSpectrumOutOfRange,
  kMalformedSparse,
  kStructureMismatch,
  kDisconnectedGraph,
  kSingularKasteleyn,
  kInvalidSigma,
  kIndefiniteL,
  kTooLarge,
  kInvalidKernel,
  kInvalidArgument,
  kParseError,
  kIoError,
};

const char* to_string(ErrorCode code);

/// Every failure raised by the library. `what()` starts with the error name.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail);
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Deterministic stream of uniform draws in [0, 1).
///
/// Backed by std::mt19937_64; each draw takes the top 53 bits of one engine
/// output, so a seed fixes the sequence on every platform.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed);

  /// Stream positioned after `offset` draws of `seed`.
  static RngStream at_offset(std::uint64_t seed, std::uint64_t offset);

  double uniform();
  /// Standard normal variate (Box-Muller over two uniform draws).
  double gaussian();

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t draws() const noexcept { return draws_; }

 private:
  std::mt19937_64 engine_;
  std::uint64_t seed_;
  std::uint64_t draws_ = 0;
};

/// Result of one sampling run.
///
/// `pivots[j]` is the conditional inclusion probability of index j (clamped
/// to [0, 1]) and `decisions[j]` the outcome. For sparse samplers both are
/// indexed by original label even though pivots were processed in permuted
/// order.
struct Sample {
  std::vector<Index> kept;
  double log_likelihood = 0.0;
  std::vector<double> pivots;
  std::vector<bool> decisions;

  bool operator==(const Sample&) const = default;
};

/// True when both samples agree bit for bit, including every pivot.
bool bitwise_equal(const Sample& a, const Sample& b);

/// Bitmask of a subset of a ground set with at most 63 elements.
std::uint64_t subset_mask(const std::vector<Index>& kept);

struct SamplerOptions {
  /// Admissible slack on a pivot's real part outside [0, 1], and on its
  /// imaginary part relative to max(1, max|K_ij|). Negative selects the
  /// precision default (1e-8 for 64-bit, 1e-4 for 32-bit).
  double pivot_tolerance = -1.0;

  /// Clamp only; never raise PivotOutOfRange or NonRealPivot.
  static SamplerOptions lenient();

  template <class Real>
  double tolerance() const {
    if (pivot_tolerance >= 0.0) return pivot_tolerance;
    return std::is_same_v<Real, float> ? 1e-4 : 1e-8;
  }
};

}  // namespace dpp

#endif  // DPPFACT_COMMON_HPP_
