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

#include "dppfact/benchmark.hpp"

#include <algorithm>
#include <chrono>

#include <fmt/format.h>

#include "dppfact/builders.hpp"

namespace dpp {

namespace {

const char* const kBases[] = {"hermitian", "ldl", "general", "lu", "unblocked-hermitian", "unblocked-general"};

bool is_hermitian_base(const std::string& base) {
  return base == "hermitian" || base == "ldl" || base == "unblocked-hermitian";
}

std::pair<std::string, int> split_variant(const std::string& variant) {
  const std::string canonical = canonical_variant(variant);
  return {canonical.substr(0, canonical.size() - 2), std::stoi(canonical.substr(canonical.size() - 2))};
}

template <Scalar S>
double time_once(const std::string& base, const MarginalKernel<S>& kernel, const BlockingConfig& cfg,
                 std::uint64_t seed) {
  RngStream rng(seed);
  const auto start = std::chrono::steady_clock::now();
  if (base == "hermitian" || base == "general") {
    static_cast<void>(sample_tiled_parallel(kernel, rng, cfg));
  } else if (base == "ldl" || base == "lu") {
    static_cast<void>(factor_tiled<S>(kernel.matrix(), kernel.symmetry(), cfg));
  } else {
    static_cast<void>(sample_unblocked(kernel, rng));
  }
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

template <Scalar S>
double median_seconds(const std::string& base, Index n, int reps, const BlockingConfig& cfg, std::uint64_t seed) {
  RngStream builder(seed);
  const Symmetry symmetry = is_hermitian_base(base) ? Symmetry::kHermitian : Symmetry::kGeneral;
  const MarginalKernel<S> kernel = diagonally_dominant_kernel<S>(n, symmetry, builder);
  std::vector<double> times;
  for (int r = 0; r < reps; ++r) times.push_back(time_once(base, kernel, cfg, seed + 1 + r));
  std::sort(times.begin(), times.end());
  const std::size_t mid = times.size() / 2;
  return times.size() % 2 == 1 ? times[mid] : 0.5 * (times[mid - 1] + times[mid]);
}

}  // namespace

std::vector<std::string> benchmark_variants() {
  std::vector<std::string> names;
  for (const char* base : kBases) {
    names.push_back(fmt::format("{}64", base));
    names.push_back(fmt::format("{}32", base));
  }
  return names;
}

std::string canonical_variant(const std::string& name) {
  std::string compact = name;
  if (compact.size() > 3 && compact[compact.size() - 3] == '-') compact.erase(compact.size() - 3, 1);
  const auto names = benchmark_variants();
  if (std::find(names.begin(), names.end(), compact) == names.end()) {
    throw Error(ErrorCode::kInvalidArgument, fmt::format("unknown benchmark variant '{}'", name));
  }
  return compact;
}

double model_flops(const std::string& variant, Index n) {
  const auto [base, precision] = split_variant(variant);
  const double cube = static_cast<double>(n) * static_cast<double>(n) * static_cast<double>(n);
  return is_hermitian_base(base) ? cube / 3.0 : 4.0 * 2.0 * cube / 3.0;
}

std::vector<BenchmarkRow> benchmark_suite(const std::vector<Index>& sizes, const std::vector<std::string>& variants,
                                          int reps, const BlockingConfig& cfg, std::uint64_t seed) {
  if (reps < 1) throw Error(ErrorCode::kInvalidArgument, "at least one repetition required");
  std::vector<BenchmarkRow> rows;
  for (const std::string& requested : variants) {
    const std::string variant = canonical_variant(requested);
    const auto [base, precision] = split_variant(variant);
    for (Index n : sizes) {
      if (n < 1) throw Error(ErrorCode::kInvalidArgument, fmt::format("invalid size {}", n));
      double seconds = 0.0;
      const bool hermitian = is_hermitian_base(base);
      if (precision == 64) {
        seconds = hermitian ? median_seconds<double>(base, n, reps, cfg, seed)
                            : median_seconds<std::complex<double>>(base, n, reps, cfg, seed);
      } else {
        seconds = hermitian ? median_seconds<float>(base, n, reps, cfg, seed)
                            : median_seconds<std::complex<float>>(base, n, reps, cfg, seed);
      }
      rows.push_back({variant, n, precision, seconds, model_flops(variant, n) / seconds / 1e9});
    }
  }
  return rows;
}

std::string to_csv(const std::vector<BenchmarkRow>& rows) {
  std::string out = "variant,n,precision,seconds,gflops\n";
  for (const BenchmarkRow& row : rows) {
    out += fmt::format("{},{},{},{:.6f},{:.3f}\n", row.variant, row.n, row.precision, row.seconds, row.gflops);
  }
  return out;
}

}  // namespace dpp
