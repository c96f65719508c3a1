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

#include "dppfact/graph.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include <Eigen/Cholesky>
#include <Eigen/QR>
#include <fmt/format.h>

namespace dpp {

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(Index n) : parent_(static_cast<std::size_t>(n)) {
    std::iota(parent_.begin(), parent_.end(), Index{0});
  }

  Index find(Index v) {
    while (parent_[v] != v) {
      parent_[v] = parent_[parent_[v]];
      v = parent_[v];
    }
    return v;
  }

  bool unite(Index a, Index b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[std::max(a, b)] = std::min(a, b);
    return true;
  }

 private:
  std::vector<Index> parent_;
};

void require_connected(const UndirectedGraph& graph) {
  if (!graph.connected()) {
    throw Error(ErrorCode::kDisconnectedGraph,
                fmt::format("graph with {} vertices and {} edges is not connected", graph.vertex_count(),
                            graph.edge_count()));
  }
}

}  // namespace

UndirectedGraph::UndirectedGraph(Index vertex_count, std::vector<Edge> edges,
                                 std::vector<std::array<double, 2>> positions)
    : vertex_count_(vertex_count), edges_(std::move(edges)), positions_(std::move(positions)) {
  if (vertex_count_ < 1) throw Error(ErrorCode::kInvalidArgument, "graph needs at least one vertex");
  if (!positions_.empty() && static_cast<Index>(positions_.size()) != vertex_count_) {
    throw Error(ErrorCode::kInvalidArgument, "one position per vertex required");
  }
  std::set<std::pair<Index, Index>> seen;
  for (const Edge& e : edges_) {
    if (e.u < 0 || e.u >= e.v || e.v >= vertex_count_) {
      throw Error(ErrorCode::kInvalidArgument, fmt::format("invalid edge ({}, {})", e.u, e.v));
    }
    if (!seen.emplace(e.u, e.v).second) {
      throw Error(ErrorCode::kInvalidArgument, fmt::format("duplicate edge ({}, {})", e.u, e.v));
    }
  }
}

bool UndirectedGraph::connected() const {
  DisjointSets sets(vertex_count_);
  Index components = vertex_count_;
  for (const Edge& e : edges_) {
    if (sets.unite(e.u, e.v)) --components;
  }
  return components == 1;
}

UndirectedGraph grid_graph(Index width, Index height) {
  if (width < 1 || height < 1) {
    throw Error(ErrorCode::kInvalidArgument, fmt::format("invalid grid {}x{}", width, height));
  }
  std::vector<Edge> edges;
  std::vector<std::array<double, 2>> positions;
  for (Index y = 0; y < height; ++y) {
    for (Index x = 0; x < width; ++x) {
      const Index v = y * width + x;
      positions.push_back({double(x), double(y)});
      if (x + 1 < width) edges.push_back({v, v + 1});
      if (y + 1 < height) edges.push_back({v, v + width});
    }
  }
  return UndirectedGraph(width * height, std::move(edges), std::move(positions));
}

UndirectedGraph hex_graph(Index d) {
  if (d < 1) throw Error(ErrorCode::kInvalidArgument, fmt::format("invalid hexagon count {}", d));
  const Index width = 2 * d + 1;
  const Index height = 2 * d;
  std::vector<Edge> edges;
  std::vector<std::array<double, 2>> positions;
  for (Index y = 0; y < height; ++y) {
    for (Index x = 0; x < width; ++x) {
      const Index v = y * width + x;
      positions.push_back({double(x), double(y)});
      if (x + 1 < width) edges.push_back({v, v + 1});
      if (y + 1 < height && (x + y) % 2 == 0) edges.push_back({v, v + width});
    }
  }
  return UndirectedGraph(width * height, std::move(edges), std::move(positions));
}

ProjectionKernel<double> ust_kernel(const UndirectedGraph& graph) {
  require_connected(graph);
  const Index m = graph.edge_count();
  const Index r = graph.vertex_count() - 1;
  // Transposed reduced incidence: row e has +1 at u and -1 at v, with
  // vertex 0 dropped.
  DenseMatrix<double> incidence = DenseMatrix<double>::Zero(m, r);
  for (Index e = 0; e < m; ++e) {
    const Edge& edge = graph.edges()[e];
    if (edge.u > 0) incidence(e, edge.u - 1) = 1.0;
    if (edge.v > 0) incidence(e, edge.v - 1) = -1.0;
  }
  Eigen::HouseholderQR<DenseMatrix<double>> qr(incidence);
  DenseMatrix<double> basis = qr.householderQ() * DenseMatrix<double>::Identity(m, r);
  incidence.resize(0, 0);
  DenseMatrix<double> projection = DenseMatrix<double>::Zero(m, m);
  projection.selfadjointView<Eigen::Lower>().rankUpdate(basis);
  for (Index i = 0; i < m; ++i) projection(i, i) = std::clamp(projection(i, i), 0.0, 1.0);
  return ProjectionKernel<double>::trusted(MarginalKernel<double>::hermitian_from_lower(std::move(projection)), r);
}

double log_spanning_tree_count(const UndirectedGraph& graph) {
  require_connected(graph);
  const Index r = graph.vertex_count() - 1;
  if (r == 0) return 0.0;
  DenseMatrix<double> laplacian = DenseMatrix<double>::Zero(r, r);
  for (const Edge& e : graph.edges()) {
    const Index a = e.u - 1;
    const Index b = e.v - 1;
    if (a >= 0) laplacian(a, a) += 1.0;
    if (b >= 0) laplacian(b, b) += 1.0;
    if (a >= 0 && b >= 0) {
      laplacian(a, b) -= 1.0;
      laplacian(b, a) -= 1.0;
    }
  }
  Eigen::LLT<DenseMatrix<double>> llt(laplacian);
  if (llt.info() != Eigen::Success) {
    throw Error(ErrorCode::kDisconnectedGraph, "reduced Laplacian is not positive definite");
  }
  return 2.0 * llt.matrixLLT().diagonal().array().log().sum();
}

SpanningTreeReport decode_spanning_tree(const UndirectedGraph& graph, const std::vector<Index>& kept) {
  SpanningTreeReport report;
  report.edge_count = static_cast<Index>(kept.size());
  DisjointSets sets(graph.vertex_count());
  Index components = graph.vertex_count();
  report.acyclic = true;
  for (Index e : kept) {
    if (e < 0 || e >= graph.edge_count()) {
      report.reason = fmt::format("edge index {} out of range", e);
      report.acyclic = false;
      return report;
    }
    const Edge& edge = graph.edges()[e];
    if (sets.unite(edge.u, edge.v)) {
      --components;
    } else {
      report.acyclic = false;
    }
  }
  report.connected = components == 1;
  report.valid = report.acyclic && report.connected && report.edge_count == graph.vertex_count() - 1;
  if (!report.valid) {
    report.reason = !report.acyclic    ? "edge set contains a cycle"
                    : !report.connected ? fmt::format("edge set leaves {} components", components)
                                        : "wrong edge count";
  }
  return report;
}

}  // namespace dpp
