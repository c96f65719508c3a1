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


#include "kernel_source.hpp"

#include <charconv>
#include <fstream>

#include <fmt/format.h>

#include "dppfact/builders.hpp"
#include "dppfact/matrix_market.hpp"

namespace dpp::cli {

namespace {

Error bad_spec(const std::string& spec) {
  return Error(ErrorCode::kInvalidArgument, fmt::format("cannot parse kernel spec '{}'", spec));
}

Index parse_index(const std::string& text, const std::string& spec) {
  Index value = 0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || end != text.data() + text.size() || value < 0) throw bad_spec(spec);
  return value;
}

std::pair<Index, Index> parse_dims(const std::string& text, const std::string& spec) {
  const auto x = text.find('x');
  if (x == std::string::npos) throw bad_spec(spec);
  return {parse_index(text.substr(0, x), spec), parse_index(text.substr(x + 1), spec)};
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  for (std::size_t pos; (pos = text.find(sep, start)) != std::string::npos; start = pos + 1) {
    parts.push_back(text.substr(start, pos - start));
  }
  parts.push_back(text.substr(start));
  return parts;
}

bool all_real(const DenseMatrix<Complex>& m) { return m.imag().isZero(0.0); }

template <Scalar S>
S narrow(const Complex& z) {
  if constexpr (kIsComplex<S>) {
    return S(static_cast<RealOf<S>>(z.real()), static_cast<RealOf<S>>(z.imag()));
  } else {
    return static_cast<S>(z.real());
  }
}

KernelSource from_projection(std::string name, const ProjectionKernel<double>& projection) {
  KernelSource source;
  source.name = std::move(name);
  source.dense.emplace(projection.kernel().cast<Complex>());
  source.rank = projection.rank();
  return source;
}

KernelSource build(const std::string& spec, std::uint64_t kernel_seed) {
  const auto parts = split(spec, ':');
  const std::string& kind = parts[0];
  RngStream rng(kernel_seed);
  KernelSource source;
  source.name = spec;
  if (kind == "identity" && parts.size() == 2) {
    const Index n = parse_index(parts[1], spec);
    source.dense.emplace(DenseMatrix<Complex>::Identity(n, n), Symmetry::kHermitian);
  } else if (kind == "random-hermitian" && parts.size() == 2) {
    const Index n = parse_index(parts[1], spec);
    source.dense.emplace(random_admissible_hermitian<Complex>(n, random_spectrum(n, rng), rng));
    source.real = false;
  } else if (kind == "random-nonhermitian" && parts.size() == 2) {
    source.dense.emplace(random_admissible_nonhermitian<Complex>(parse_index(parts[1], spec), rng));
    source.real = false;
  } else if (kind == "aztec" && parts.size() == 2) {
    source.diamond.emplace(parse_index(parts[1], spec));
    source.dense.emplace(aztec_kernel(*source.diamond));
    source.real = false;
  } else if ((kind == "grid" || kind == "hex") && parts.size() == 2) {
    UndirectedGraph graph = parse_graph(spec);
    source = from_projection(spec, ust_kernel(graph));
    source.graph.emplace(std::move(graph));
  } else if (kind == "laplacian2d" && parts.size() == 3) {
    const auto [w, h] = parse_dims(parts[1], spec);
    char* end = nullptr;
    const double sigma = std::strtod(parts[2].c_str(), &end);
    if (end == parts[2].c_str() || *end != '\0') throw bad_spec(spec);
    const SparseKernel<double> k = laplacian2d_kernel(w, h, sigma);
    std::vector<Complex> values(k.values().begin(), k.values().end());
    source.sparse.emplace(k.order(), k.col_ptr(), k.row_index(), std::move(values));
    source.grid_width = w;
    source.grid_height = h;
  } else {
    throw bad_spec(spec);
  }
  return source;
}

}  // namespace

UndirectedGraph parse_graph(const std::string& spec) {
  const auto parts = split(spec, ':');
  if (parts.size() == 2 && parts[0] == "grid") {
    const auto [w, h] = parse_dims(parts[1], spec);
    return grid_graph(w, h);
  }
  if (parts.size() == 2 && parts[0] == "hex") return hex_graph(parse_index(parts[1], spec));
  throw bad_spec(spec);
}

KernelSource load_kernel(const std::string& builder, const std::string& input, std::uint64_t kernel_seed) {
  if (builder.empty() == input.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "exactly one of --builder and --input is required");
  }
  if (!builder.empty()) return build(builder, kernel_seed);

  const MatrixMarket market = read_matrix_market_file(input);
  KernelSource source;
  source.name = input;
  source.real = !market.complex_field;
  if (market.coordinate && market.hermitian()) {
    source.sparse.emplace(to_sparse_kernel<Complex>(market));
  } else {
    source.dense.emplace(to_marginal_kernel<Complex>(market));
    source.real = all_real(source.dense->matrix());
  }
  return source;
}

template <Scalar S>
MarginalKernel<S> dense_as(const KernelSource& source) {
  const MarginalKernel<Complex> wide = source.dense ? *source.dense : source.sparse->densify();
  if constexpr (kIsComplex<S>) {
    return wide.cast<S>();
  } else {
    return MarginalKernel<S>(wide.matrix().real().cast<S>(), wide.symmetry());
  }
}

template <Scalar S>
SparseKernel<S> sparse_as(const KernelSource& source) {
  if (!source.hermitian()) throw Error(ErrorCode::kInvalidArgument, "sparse sampling needs a Hermitian kernel");
  if (source.sparse) {
    const auto& k = *source.sparse;
    std::vector<S> values;
    values.reserve(k.values().size());
    for (const Complex& z : k.values()) values.push_back(narrow<S>(z));
    return SparseKernel<S>(k.order(), k.col_ptr(), k.row_index(), std::move(values));
  }
  const auto& m = source.dense->matrix();
  std::vector<typename SparseKernel<S>::Triplet> triplets;
  for (Index j = 0; j < m.cols(); ++j) {
    for (Index i = j; i < m.rows(); ++i) {
      if (i == j || m(i, j) != Complex(0.0)) triplets.push_back({i, j, narrow<S>(m(i, j))});
    }
  }
  return SparseKernel<S>::from_triplets(m.rows(), std::move(triplets));
}

template MarginalKernel<float> dense_as<float>(const KernelSource&);
template MarginalKernel<double> dense_as<double>(const KernelSource&);
template MarginalKernel<std::complex<float>> dense_as<std::complex<float>>(const KernelSource&);
template MarginalKernel<Complex> dense_as<Complex>(const KernelSource&);
template SparseKernel<float> sparse_as<float>(const KernelSource&);
template SparseKernel<double> sparse_as<double>(const KernelSource&);
template SparseKernel<std::complex<float>> sparse_as<std::complex<float>>(const KernelSource&);
template SparseKernel<Complex> sparse_as<Complex>(const KernelSource&);

}  // namespace dpp::cli
