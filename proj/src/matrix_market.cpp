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

#include "dppfact/matrix_market.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <fmt/format.h>

#include "detail/instantiate.hpp"

namespace dpp {

namespace {

using Complex = std::complex<double>;

Error parse_error(const std::string& what) { return Error(ErrorCode::kParseError, what); }

std::string lowercase(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

std::vector<std::string> tokens(const std::string& line) {
  std::istringstream stream(line);
  std::vector<std::string> out;
  for (std::string t; stream >> t;) out.push_back(t);
  return out;
}

double to_double(const std::string& token) {
  char* end = nullptr;
  const double value = std::strtod(token.c_str(), &end);
  if (end == token.c_str() || *end != '\0') throw parse_error(fmt::format("'{}' is not a number", token));
  return value;
}

Index to_index(const std::string& token) {
  char* end = nullptr;
  const long long value = std::strtoll(token.c_str(), &end, 10);
  if (end == token.c_str() || *end != '\0') throw parse_error(fmt::format("'{}' is not an integer", token));
  return static_cast<Index>(value);
}

// Next line that is neither blank nor a comment.
bool next_data_line(std::istream& in, std::string& line) {
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '%') continue;
    return true;
  }
  return false;
}

template <Scalar S>
S narrow(const Complex& value) {
  if constexpr (kIsComplex<S>) {
    return S(static_cast<RealOf<S>>(value.real()), static_cast<RealOf<S>>(value.imag()));
  } else {
    if (value.imag() != 0.0) throw parse_error("complex entry in a file read as real");
    return static_cast<S>(value.real());
  }
}

template <Scalar S>
std::string format_value(const S& value) {
  if constexpr (kIsComplex<S>) {
    return fmt::format("{:.17g} {:.17g}", static_cast<double>(value.real()), static_cast<double>(value.imag()));
  } else {
    return fmt::format("{:.17g}", static_cast<double>(value));
  }
}

}  // namespace

bool MatrixMarket::hermitian() const {
  return symmetry == MarketSymmetry::kHermitian || (symmetry == MarketSymmetry::kSymmetric && !complex_field);
}

MatrixMarket read_matrix_market(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw parse_error("empty Matrix Market stream");
  const auto header = tokens(lowercase(line));
  if (header.size() != 5 || header[0] != "%%matrixmarket" || header[1] != "matrix") {
    throw parse_error(fmt::format("bad Matrix Market banner '{}'", line));
  }
  MatrixMarket market;
  if (header[2] == "coordinate") {
    market.coordinate = true;
  } else if (header[2] != "array") {
    throw parse_error(fmt::format("unsupported format '{}'", header[2]));
  }
  if (header[3] == "complex") {
    market.complex_field = true;
  } else if (header[3] != "real" && header[3] != "integer") {
    throw parse_error(fmt::format("unsupported field '{}'", header[3]));
  }
  if (header[4] == "symmetric") {
    market.symmetry = MarketSymmetry::kSymmetric;
  } else if (header[4] == "hermitian") {
    market.symmetry = MarketSymmetry::kHermitian;
  } else if (header[4] != "general") {
    throw parse_error(fmt::format("unsupported symmetry '{}'", header[4]));
  }

  if (!next_data_line(in, line)) throw parse_error("missing size line");
  const auto size = tokens(line);
  if (size.size() != (market.coordinate ? 3U : 2U)) throw parse_error(fmt::format("bad size line '{}'", line));
  market.rows = to_index(size[0]);
  market.cols = to_index(size[1]);
  if (market.rows < 0 || market.cols < 0) throw parse_error("negative dimensions");
  const bool triangle = market.symmetry != MarketSymmetry::kGeneral;
  if (triangle && market.rows != market.cols) throw parse_error("symmetric matrices must be square");

  const std::size_t value_tokens = market.complex_field ? 2 : 1;
  auto read_value = [&](const std::vector<std::string>& t, std::size_t offset) {
    return Complex(to_double(t[offset]), market.complex_field ? to_double(t[offset + 1]) : 0.0);
  };

  if (market.coordinate) {
    const Index nnz = to_index(size[2]);
    for (Index k = 0; k < nnz; ++k) {
      if (!next_data_line(in, line)) throw parse_error(fmt::format("expected {} entries, found {}", nnz, k));
      const auto t = tokens(line);
      if (t.size() != 2 + value_tokens) throw parse_error(fmt::format("bad entry line '{}'", line));
      const Index i = to_index(t[0]) - 1;
      const Index j = to_index(t[1]) - 1;
      if (i < 0 || j < 0 || i >= market.rows || j >= market.cols) {
        throw parse_error(fmt::format("entry ({}, {}) out of range", i + 1, j + 1));
      }
      market.entries.push_back({i, j, read_value(t, 2)});
    }
  } else {
    for (Index j = 0; j < market.cols; ++j) {
      for (Index i = triangle ? j : 0; i < market.rows; ++i) {
        if (!next_data_line(in, line)) throw parse_error("array data ended early");
        const auto t = tokens(line);
        if (t.size() != value_tokens) throw parse_error(fmt::format("bad array line '{}'", line));
        market.entries.push_back({i, j, read_value(t, 0)});
      }
    }
  }
  if (next_data_line(in, line)) throw parse_error(fmt::format("unexpected trailing data '{}'", line));
  return market;
}

MatrixMarket read_matrix_market_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoError, fmt::format("cannot open '{}'", path));
  return read_matrix_market(in);
}

template <Scalar S>
MarginalKernel<S> to_marginal_kernel(const MatrixMarket& market) {
  if (market.rows != market.cols) {
    throw parse_error(fmt::format("kernel must be square, got {}x{}", market.rows, market.cols));
  }
  DenseMatrix<S> k = DenseMatrix<S>::Zero(market.rows, market.cols);
  for (const auto& e : market.entries) {
    const S value = narrow<S>(e.value);
    k(e.row, e.col) = value;
    if (market.symmetry == MarketSymmetry::kSymmetric) k(e.col, e.row) = value;
    if (market.symmetry == MarketSymmetry::kHermitian) k(e.col, e.row) = conjugate(value);
  }
  if (market.hermitian()) {
    for (Index j = 0; j < k.rows(); ++j) k(j, j) = S(real_part(k(j, j)));
    return MarginalKernel<S>(std::move(k), Symmetry::kHermitian);
  }
  return MarginalKernel<S>(std::move(k), Symmetry::kGeneral);
}

template <Scalar S>
SparseKernel<S> to_sparse_kernel(const MatrixMarket& market) {
  if (!market.hermitian()) throw parse_error("sparse kernels must be stored as symmetric or hermitian");
  std::vector<typename SparseKernel<S>::Triplet> triplets;
  triplets.reserve(market.entries.size());
  for (const auto& e : market.entries) triplets.push_back({e.row, e.col, narrow<S>(e.value)});
  return SparseKernel<S>::from_triplets(market.rows, std::move(triplets));
}

template <Scalar S>
void write_matrix_market(std::ostream& out, const MarginalKernel<S>& kernel) {
  const bool hermitian = kernel.hermitian();
  const char* field = kIsComplex<S> ? "complex" : "real";
  const char* symmetry = !hermitian ? "general" : (kIsComplex<S> ? "hermitian" : "symmetric");
  out << fmt::format("%%MatrixMarket matrix array {} {}\n", field, symmetry);
  const Index n = kernel.order();
  out << n << ' ' << n << '\n';
  for (Index j = 0; j < n; ++j) {
    for (Index i = hermitian ? j : 0; i < n; ++i) out << format_value(kernel.matrix()(i, j)) << '\n';
  }
  if (!out) throw Error(ErrorCode::kIoError, "failed to write Matrix Market data");
}

template <Scalar S>
void write_matrix_market(std::ostream& out, const SparseKernel<S>& kernel) {
  const char* field = kIsComplex<S> ? "complex" : "real";
  const char* symmetry = kIsComplex<S> ? "hermitian" : "symmetric";
  out << fmt::format("%%MatrixMarket matrix coordinate {} {}\n", field, symmetry);
  out << kernel.order() << ' ' << kernel.order() << ' ' << kernel.nnz() << '\n';
  for (Index j = 0; j < kernel.order(); ++j) {
    for (Index p = kernel.col_ptr()[j]; p < kernel.col_ptr()[j + 1]; ++p) {
      out << kernel.row_index()[p] + 1 << ' ' << j + 1 << ' ' << format_value(kernel.values()[p]) << '\n';
    }
  }
  if (!out) throw Error(ErrorCode::kIoError, "failed to write Matrix Market data");
}

void write_sample(std::ostream& out, const Sample& sample) {
  out << fmt::format("loglik {:.17g}\n", sample.log_likelihood);
  for (std::size_t k = 0; k < sample.kept.size(); ++k) out << (k ? " " : "") << sample.kept[k];
  out << '\n';
  if (!out) throw Error(ErrorCode::kIoError, "failed to write sample");
}

SampleFile read_sample(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw parse_error("empty sample file");
  const auto head = tokens(line);
  if (head.size() != 2 || head[0] != "loglik") throw parse_error(fmt::format("bad sample header '{}'", line));
  SampleFile file;
  file.log_likelihood = to_double(head[1]);
  if (std::getline(in, line)) {
    for (const std::string& t : tokens(line)) file.kept.push_back(to_index(t));
  }
  return file;
}

#define DPP_INSTANTIATE(S)                                                            \
  template MarginalKernel<S> to_marginal_kernel<S>(const MatrixMarket&);             \
  template SparseKernel<S> to_sparse_kernel<S>(const MatrixMarket&);                 \
  template void write_matrix_market<S>(std::ostream&, const MarginalKernel<S>&);     \
  template void write_matrix_market<S>(std::ostream&, const SparseKernel<S>&);
DPP_FOR_EACH_SCALAR(DPP_INSTANTIATE)
#undef DPP_INSTANTIATE

}  // namespace dpp
