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


#ifndef DPPFACT_TOOLS_COMMANDS_HPP_
#define DPPFACT_TOOLS_COMMANDS_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "dppfact/blocked.hpp"

namespace dpp::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;
inline constexpr int kExitIo = 2;
inline constexpr int kExitSampler = 3;
inline constexpr int kExitInvalidStructure = 4;

struct Options {
  std::uint64_t seed = 1;
  std::uint64_t kernel_seed = 1;
  int precision = 64;
  std::string builder;
  std::string input;
  std::string variant;
  std::string ordering = "auto";
  std::string out;
  std::string sample_out;
  BlockingConfig blocking;
  bool lenient = false;

  // validate
  Index trials = 200000;
  double significance = 1e-3;
  bool json = false;

  // bench
  std::vector<Index> sizes;
  std::vector<std::string> bench_variants;
  int reps = 3;

  // ust and aztec
  std::string graph;
  Index order = 0;
  Index runs = 1;
  Index cell = 8;
  Index kenyon_block = 256;
};

int cmd_sample(const Options& o);
int cmd_ust(const Options& o);
int cmd_aztec(const Options& o);
int cmd_validate(const Options& o);
int cmd_bench(const Options& o);
int cmd_map(const Options& o);
int cmd_export(const Options& o);
int cmd_symbolic(const Options& o);

}  // namespace dpp::cli

#endif  // DPPFACT_TOOLS_COMMANDS_HPP_
