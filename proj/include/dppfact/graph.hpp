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

// Graphs and the uniform-spanning-tree (transfer current) kernel.

#ifndef DPPFACT_GRAPH_HPP_
#define DPPFACT_GRAPH_HPP_

#include <array>
#include <string>
#include <utility>

#include "dppfact/elementary.hpp"

namespace dpp {

struct Edge {
  Index u;
  Index v;
  bool operator==(const Edge&) const = default;
};

class UndirectedGraph {
 public:
  /// Edges must satisfy u < v < vertex_count and be distinct; the edge
  /// order fixes the ground-set indexing of the tree kernel. Positions are
  /// optional drawing coordinates, one per vertex.
  UndirectedGraph(Index vertex_count, std::vector<Edge> edges,
                  std::vector<std::array<double, 2>> positions = {});

  Index vertex_count() const { return vertex_count_; }
  Index edge_count() const { return static_cast<Index>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<std::array<double, 2>>& positions() const { return positions_; }
  bool connected() const;

 private:
  Index vertex_count_;
  std::vector<Edge> edges_;
  std::vector<std::array<double, 2>> positions_;
};

/// width x height lattice; vertex (x, y) is y * width + x. Edges are listed
/// per vertex in index order, rightward neighbour first.
UndirectedGraph grid_graph(Index width, Index height);

/// Brick-wall embedding of a d x d patch of hexagons: a (2d + 1) x 2d
/// lattice keeping every horizontal edge and the vertical edge from (x, y)
/// to (x, y + 1) whenever x + y is even. Vertex (x, y) is y * (2d + 1) + x.
UndirectedGraph hex_graph(Index d);

/// Orthogonal projection onto the row space of the reduced signed incidence
/// matrix, built from a thin QR factorization. Rank |V| - 1. Throws
/// DisconnectedGraph.
ProjectionKernel<double> ust_kernel(const UndirectedGraph& graph);

/// ln of the number of spanning trees: log-determinant of the reduced
/// Laplacian (matrix-tree theorem). Throws DisconnectedGraph.
double log_spanning_tree_count(const UndirectedGraph& graph);

struct SpanningTreeReport {
  bool valid = false;
  Index edge_count = 0;
  bool acyclic = false;
  bool connected = false;
  std::string reason;
};

SpanningTreeReport decode_spanning_tree(const UndirectedGraph& graph, const std::vector<Index>& kept);

}  // namespace dpp

#endif  // DPPFACT_GRAPH_HPP_
