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

#include <bit>
#include <cmath>
#include <limits>
#include <numbers>

#include "dppfact/common.hpp"

namespace dpp {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kPivotOutOfRange: return "PivotOutOfRange";
    case ErrorCode::kNonRealPivot: return "NonRealPivot";
    case ErrorCode::kSingularConditioning: return "SingularConditioning";
    case ErrorCode::kZeroPivot: return "ZeroPivot";
    case ErrorCode::kNegativeDiagonal: return "NegativeDiagonal";
    case ErrorCode::kDegenerateMass: return "DegenerateMass";
    case ErrorCode::kSpectrumOutOfRange: return "SpectrumOutOfRange";
    case ErrorCode::kMalformedSparse: return "MalformedSparse";
    case ErrorCode::kStructureMismatch: return "StructureMismatch";
    case ErrorCode::kDisconnectedGraph: return "DisconnectedGraph";
    case ErrorCode::kSingularKasteleyn: return "SingularKasteleyn";
    case ErrorCode::kInvalidSigma: return "InvalidSigma";
    case ErrorCode::kIndefiniteL: return "IndefiniteL";
    case ErrorCode::kTooLarge: return "TooLarge";
    case ErrorCode::kInvalidKernel: return "InvalidKernel";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kIoError: return "IoError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& detail)
    : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

RngStream::RngStream(std::uint64_t seed) : engine_(seed), seed_(seed) {}

RngStream RngStream::at_offset(std::uint64_t seed, std::uint64_t offset) {
  RngStream stream(seed);
  stream.engine_.discard(offset);
  stream.draws_ = offset;
  return stream;
}

double RngStream::uniform() {
  ++draws_;
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double RngStream::gaussian() {
  // 1 - u lies in (0, 1], so the logarithm is finite.
  const double u1 = 1.0 - uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

bool bitwise_equal(const Sample& a, const Sample& b) {
  if (a.kept != b.kept || a.decisions != b.decisions) return false;
  if (std::bit_cast<std::uint64_t>(a.log_likelihood) !=
      std::bit_cast<std::uint64_t>(b.log_likelihood)) {
    return false;
  }
  if (a.pivots.size() != b.pivots.size()) return false;
  for (std::size_t i = 0; i < a.pivots.size(); ++i) {
    if (std::bit_cast<std::uint64_t>(a.pivots[i]) != std::bit_cast<std::uint64_t>(b.pivots[i])) {
      return false;
    }
  }
  return true;
}

std::uint64_t subset_mask(const std::vector<Index>& kept) {
  std::uint64_t mask = 0;
  for (Index j : kept) {
    if (j < 0 || j >= 64) throw Error(ErrorCode::kTooLarge, "subset index exceeds 63");
    mask |= std::uint64_t{1} << j;
  }
  return mask;
}

SamplerOptions SamplerOptions::lenient() {
  SamplerOptions options;
  options.pivot_tolerance = std::numeric_limits<double>::infinity();
  return options;
}

}  // namespace dpp
