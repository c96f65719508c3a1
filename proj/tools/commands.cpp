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


#include "commands.hpp"

#include <fstream>
#include <functional>
#include <iostream>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "dppfact/benchmark.hpp"
#include "dppfact/image.hpp"
#include "dppfact/matrix_market.hpp"
#include "dppfact/oracle.hpp"
#include "kernel_source.hpp"

namespace dpp::cli {

namespace {

using SampleFn = std::function<Sample(RngStream&)>;

template <class F>
int dispatch(bool real, int precision, F&& f) {
  if (real) return precision == 32 ? f.template operator()<float>() : f.template operator()<double>();
  return precision == 32 ? f.template operator()<std::complex<float>>() : f.template operator()<Complex>();
}

SamplerOptions sampler_options(const Options& o) { return o.lenient ? SamplerOptions::lenient() : SamplerOptions{}; }

std::vector<Index> choose_ordering(const KernelSource& source, const SparseKernel<Complex>& pattern,
                                   const std::string& name) {
  const bool grid = source.grid_width > 0;
  if (name == "natural") return natural_ordering(pattern.order());
  if (name == "rcm" || (name == "auto" && !grid)) return reverse_cuthill_mckee(pattern);
  if (name == "nd" || name == "auto") {
    if (!grid) throw Error(ErrorCode::kInvalidArgument, "nested dissection needs a laplacian2d builder");
    return grid_nested_dissection(source.grid_width, source.grid_height);
  }
  throw Error(ErrorCode::kInvalidArgument, fmt::format("unknown ordering '{}'", name));
}

template <Scalar S>
SampleFn prepare(const std::string& variant, const KernelSource& source, const Options& o) {
  const SamplerOptions options = sampler_options(o);
  const BlockingConfig cfg = o.blocking;
  if (variant == "sparse" || (variant == "map" && source.sparse)) {
    auto kernel = std::make_shared<SparseKernel<S>>(sparse_as<S>(source));
    const std::vector<Index> perm = choose_ordering(source, sparse_as<Complex>(source), o.ordering);
    auto tree = std::make_shared<EliminationTree>(symbolic_analyze(*kernel, perm));
    if (variant == "map") {
      return [=](RngStream&) { return sparse_greedy_map(*kernel, *tree, options).sample; };
    }
    return [=](RngStream& rng) { return sample_sparse_hermitian(*kernel, *tree, rng, options).sample; };
  }
  auto kernel = std::make_shared<MarginalKernel<S>>(dense_as<S>(source));
  if (variant == "unblocked") {
    return [=](RngStream& rng) { return sample_unblocked(*kernel, rng, options).sample; };
  }
  if (variant == "blocked") {
    return [=](RngStream& rng) { return sample_blocked(*kernel, rng, cfg, options).sample; };
  }
  if (variant == "tiled") {
    return [=](RngStream& rng) { return sample_tiled_parallel(*kernel, rng, cfg, options).sample; };
  }
  if (variant == "map") {
    return [=](RngStream&) { return greedy_map(*kernel, options).sample; };
  }
  if (variant == "spectral") {
    auto sampler = std::make_shared<SpectralSampler<S>>(*kernel);
    return [=](RngStream& rng) { return sampler->sample(rng); };
  }
  if (variant == "elementary") {
    auto projection = std::make_shared<ProjectionKernel<S>>(
        source.rank >= 0 ? ProjectionKernel<S>::trusted(*kernel, source.rank) : ProjectionKernel<S>(*kernel));
    const Index n = kernel->order();
    return [=](RngStream& rng) { return sample_elementary(*projection, rng).to_sample(n); };
  }
  throw Error(ErrorCode::kInvalidArgument, fmt::format("unknown variant '{}'", variant));
}

std::string default_variant(const Options& o, const KernelSource& source) {
  if (!o.variant.empty()) return o.variant;
  return source.sparse ? "sparse" : "unblocked";
}

void emit_sample(const std::string& path, const Sample& sample) {
  if (path.empty()) {
    write_sample(std::cout, sample);
    return;
  }
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kIoError, fmt::format("cannot open '{}'", path));
  write_sample(out, sample);
}

template <class Writer>
void emit_text(const std::string& path, Writer&& writer) {
  if (path.empty()) {
    writer(std::cout);
    return;
  }
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kIoError, fmt::format("cannot open '{}'", path));
  writer(out);
}

}  // namespace

int cmd_sample(const Options& o) {
  const KernelSource source = load_kernel(o.builder, o.input, o.kernel_seed);
  const std::string variant = default_variant(o, source);
  return dispatch(source.real, o.precision, [&]<Scalar S>() {
    RngStream rng(o.seed);
    const Sample sample = prepare<S>(variant, source, o)(rng);
    emit_sample(o.out, sample);
    if (!o.out.empty()) fmt::print("loglik {:.10g}\nkept {}\n", sample.log_likelihood, sample.kept.size());
    return kExitOk;
  });
}

int cmd_map(const Options& o) {
  const KernelSource source = load_kernel(o.builder, o.input, o.kernel_seed);
  return dispatch(source.real, o.precision, [&]<Scalar S>() {
    RngStream unused(o.seed);
    const Sample sample = prepare<S>("map", source, o)(unused);
    if (!o.out.empty()) emit_sample(o.out, sample);
    fmt::print("loglik {:.10g}\nkept {}\n", sample.log_likelihood, sample.kept.size());
    return kExitOk;
  });
}

int cmd_validate(const Options& o) {
  const KernelSource source = load_kernel(o.builder, o.input, o.kernel_seed);
  const std::string variant = default_variant(o, source);
  return dispatch(source.real, o.precision, [&]<Scalar S>() {
    const SubsetDistribution expected = enumerate_probabilities(dense_as<S>(source));
    const SampleFn sampler = prepare<S>(variant, source, o);
    const ChiSquareReport report =
        chi_square_compare([&](RngStream& rng) { return sampler(rng).kept; }, expected, o.trials, o.seed,
                           o.significance);
    fmt::print("{}\n", o.json ? report.to_json() : report.to_text());
    return report.passed ? kExitOk : kExitFailed;
  });
}

int cmd_bench(const Options& o) {
  if (o.sizes.empty()) throw Error(ErrorCode::kInvalidArgument, "--sizes is required");
  const std::vector<std::string> variants =
      o.bench_variants.empty() ? std::vector<std::string>{"hermitian64"} : o.bench_variants;
  const auto rows = benchmark_suite(o.sizes, variants, o.reps, o.blocking, o.seed);
  emit_text(o.out, [&](std::ostream& out) { out << to_csv(rows); });
  return kExitOk;
}

int cmd_export(const Options& o) {
  const KernelSource source = load_kernel(o.builder, o.input, o.kernel_seed);
  return dispatch(source.real, o.precision, [&]<Scalar S>() {
    emit_text(o.out, [&](std::ostream& out) {
      if (source.sparse) {
        write_matrix_market(out, sparse_as<S>(source));
      } else {
        write_matrix_market(out, dense_as<S>(source));
      }
    });
    return kExitOk;
  });
}

int cmd_symbolic(const Options& o) {
  const KernelSource source = load_kernel(o.builder, o.input, o.kernel_seed);
  const SparseKernel<Complex> pattern = sparse_as<Complex>(source);
  const EliminationTree tree = symbolic_analyze(pattern, choose_ordering(source, pattern, o.ordering));
  fmt::print("order {}\nkernel_nnz {}\nfactor_nnz {}\nflops {:.6g}\n", pattern.order(), pattern.nnz(),
             tree.factor_nnz, tree.flops);
  return kExitOk;
}

int cmd_ust(const Options& o) {
  const UndirectedGraph graph = parse_graph(o.graph);
  const ProjectionKernel<double> projection = ust_kernel(graph);
  KernelSource source;
  source.name = o.graph;
  source.dense.emplace(projection.kernel().cast<Complex>());
  source.rank = projection.rank();
  const std::string variant = o.variant.empty() ? "elementary" : o.variant;
  const double expected = -log_spanning_tree_count(graph);

  const int precision = o.precision;
  return dispatch(true, precision, [&]<Scalar S>() {
    RngStream rng(o.seed);
    const Sample sample = prepare<S>(variant, source, o)(rng);
    const SpanningTreeReport report = decode_spanning_tree(graph, sample.kept);
    fmt::print("graph {} vertices {} edges {}\n", o.graph, graph.vertex_count(), graph.edge_count());
    fmt::print("valid {}\nloglik {:.10g}\nexpected {:.10g}\n", report.valid, sample.log_likelihood, expected);
    if (!report.valid) fmt::print("reason {}\n", report.reason);
    if (!o.out.empty()) render_spanning_tree(graph, sample.kept, o.cell).write_ppm(o.out);
    if (!o.sample_out.empty()) emit_sample(o.sample_out, sample);
    if (report.valid) return kExitOk;
    if (precision == 32) {
      fmt::print("corrupted\n");
      return kExitOk;
    }
    return kExitInvalidStructure;
  });
}

int cmd_aztec(const Options& o) {
  const AztecDiamond diamond(o.order);
  const std::string variant = o.variant.empty() || o.variant == "auto" ? (o.order <= 20 ? "dense" : "structured")
                                                                         : o.variant;
  if (variant != "dense" && variant != "structured") {
    throw Error(ErrorCode::kInvalidArgument, fmt::format("unknown aztec variant '{}'", variant));
  }
  const bool single = o.precision == 32;
  SamplerOptions options = single || o.lenient ? SamplerOptions::lenient() : SamplerOptions{};
  const double expected = aztec_log_likelihood(o.order);

  auto run = [&]<Scalar S>() {
    std::optional<MarginalKernel<S>> dense;
    DenseMatrix<Complex> inverse;
    if (variant == "dense") {
      dense.emplace(aztec_kernel(diamond).cast<S>());
    } else {
      inverse = kasteleyn_inverse(diamond);
    }
    const KenyonOptions kenyon{o.kenyon_block, options};
    Index invalid = 0;
    for (Index r = 0; r < o.runs; ++r) {
      const std::uint64_t seed = o.seed + static_cast<std::uint64_t>(r);
      RngStream rng(seed);
      Sample sample;
      TilingReport report;
      try {
        sample = dense ? sample_nonhermitian_unblocked(*dense, rng, options).sample
                       : sample_kenyon<S>(diamond, inverse, rng, kenyon);
        report = decode_tiling(diamond, sample.kept);
      } catch (const Error& e) {
        if (!single) throw;
        report.reason = e.what();
      }
      const bool corrupted = !report.valid;
      invalid += corrupted ? 1 : 0;
      fmt::print("seed {} valid {} loglik {:.10g}{}\n", seed, report.valid, sample.log_likelihood,
                 corrupted && single ? " corrupted" : "");
      if (corrupted) fmt::print("reason {}\n", report.reason);
      if (r == 0 && !o.out.empty()) render_tiling(diamond, sample.kept, o.cell).write_ppm(o.out);
      if (r == 0 && !o.sample_out.empty()) emit_sample(o.sample_out, sample);
    }
    fmt::print("order {} dominoes {} precision {} variant {}\n", o.order, diamond.domino_count(), o.precision,
               variant);
    fmt::print("expected {:.10g}\ninvalid {}/{}\n", expected, invalid, o.runs);
    return invalid > 0 && !single ? kExitInvalidStructure : kExitOk;
  };
  return single ? run.template operator()<std::complex<float>>() : run.template operator()<Complex>();
}

}  // namespace dpp::cli
