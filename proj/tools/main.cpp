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


// dppfact: sample, validate and benchmark determinantal point processes.

#include <iostream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "commands.hpp"

namespace {

using dpp::cli::Options;

void add_kernel_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--builder", o.builder, "Kernel builder spec, e.g. random-hermitian:4 or laplacian2d:20x20:0.72");
  cmd->add_option("--input", o.input, "Matrix Market kernel file");
  cmd->add_option("--kernel-seed", o.kernel_seed, "Seed for random kernel builders");
}

void add_precision(CLI::App* cmd, Options& o) {
  cmd->add_option("--precision", o.precision, "Working precision in bits")->check(CLI::IsMember({32, 64}));
}

void add_blocking(CLI::App* cmd, Options& o) {
  cmd->add_option("--block-size", o.blocking.block_size, "Elimination block size (0 picks a default)");
  cmd->add_option("--tile-size", o.blocking.tile_size, "Tile size of the parallel variant");
  cmd->add_option("--threads", o.blocking.thread_count, "Worker threads (0 uses all)");
}

void add_sampling(CLI::App* cmd, Options& o) {
  cmd->add_option("--seed", o.seed, "Sampling seed");
  cmd->add_option("--variant", o.variant, "unblocked|blocked|tiled|sparse|elementary|spectral|map");
  cmd->add_option("--ordering", o.ordering, "Sparse ordering: auto|natural|rcm|nd");
  cmd->add_flag("--lenient", o.lenient, "Clamp out-of-range pivots instead of failing");
  add_precision(cmd, o);
  add_blocking(cmd, o);
}

int exit_code_for(const dpp::Error& e) {
  switch (e.code()) {
    case dpp::ErrorCode::kParseError:
    case dpp::ErrorCode::kIoError:
      return dpp::cli::kExitIo;
    default:
      return dpp::cli::kExitSampler;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Factorization-based sampling of determinantal point processes"};
  app.require_subcommand(1);
  Options o;

  auto* sample = app.add_subcommand("sample", "Draw one sample and write a sample file");
  add_kernel_flags(sample, o);
  add_sampling(sample, o);
  sample->add_option("--out", o.out, "Sample file (default stdout)");

  auto* ust = app.add_subcommand("ust", "Sample a uniform spanning tree");
  ust->add_option("graph", o.graph, "grid:WxH or hex:d")->required();
  ust->add_option("--seed", o.seed, "Sampling seed");
  ust->add_option("--variant", o.variant, "elementary|spectral|unblocked|blocked|tiled");
  ust->add_option("--out", o.out, "PPM image path");
  ust->add_option("--sample", o.sample_out, "Sample file path");
  ust->add_option("--cell", o.cell, "Pixels per lattice unit");
  add_precision(ust, o);
  add_blocking(ust, o);

  auto* aztec = app.add_subcommand("aztec", "Sample a domino tiling of the Aztec diamond");
  aztec->add_option("order", o.order, "Diamond order d")->required()->check(CLI::PositiveNumber);
  aztec->add_option("--seed", o.seed, "Seed of the first run");
  aztec->add_option("--runs", o.runs, "Independent runs with consecutive seeds")->check(CLI::PositiveNumber);
  aztec->add_option("--variant", o.variant, "auto|dense|structured");
  aztec->add_option("--block-size", o.kenyon_block, "Dominoes per structured elimination step");
  aztec->add_option("--out", o.out, "PPM image path (first run)");
  aztec->add_option("--sample", o.sample_out, "Sample file path (first run)");
  aztec->add_option("--cell", o.cell, "Pixels per square");
  add_precision(aztec, o);

  auto* validate = app.add_subcommand("validate", "Chi-square test of a sampler against enumeration");
  add_kernel_flags(validate, o);
  add_sampling(validate, o);
  validate->add_option("--trials", o.trials, "Number of samples");
  validate->add_option("--significance", o.significance, "Test significance level");
  validate->add_flag("--json", o.json, "Print the report as JSON");

  auto* bench = app.add_subcommand("bench", "Time the dense samplers and print CSV");
  bench->add_option("--sizes", o.sizes, "Comma-separated matrix orders")->delimiter(',')->required();
  bench->add_option("--variant", o.bench_variants, "Comma-separated variants, e.g. hermitian64,ldl64")
      ->delimiter(',');
  bench->add_option("--reps", o.reps, "Repetitions per point (median reported)");
  bench->add_option("--seed", o.seed, "Kernel seed");
  bench->add_option("--out", o.out, "CSV path (default stdout)");
  add_blocking(bench, o);

  auto* map = app.add_subcommand("map", "Greedy maximum-likelihood decisions");
  add_kernel_flags(map, o);
  map->add_option("--ordering", o.ordering, "Sparse ordering: auto|natural|rcm|nd");
  map->add_option("--out", o.out, "Sample file path");
  map->add_flag("--lenient", o.lenient, "Clamp out-of-range pivots instead of failing");
  add_precision(map, o);

  auto* exporter = app.add_subcommand("export", "Write a kernel in Matrix Market format");
  add_kernel_flags(exporter, o);
  exporter->add_option("--out", o.out, "Output path (default stdout)");
  add_precision(exporter, o);

  auto* symbolic = app.add_subcommand("symbolic", "Sparse symbolic analysis");
  add_kernel_flags(symbolic, o);
  symbolic->add_option("--ordering", o.ordering, "auto|natural|rcm|nd");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*sample) return dpp::cli::cmd_sample(o);
    if (*ust) return dpp::cli::cmd_ust(o);
    if (*aztec) return dpp::cli::cmd_aztec(o);
    if (*validate) return dpp::cli::cmd_validate(o);
    if (*bench) return dpp::cli::cmd_bench(o);
    if (*map) return dpp::cli::cmd_map(o);
    if (*exporter) return dpp::cli::cmd_export(o);
    if (*symbolic) return dpp::cli::cmd_symbolic(o);
  } catch (const dpp::Error& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return exit_code_for(e);
  } catch (const std::exception& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return dpp::cli::kExitSampler;
  }
  return dpp::cli::kExitOk;
}
