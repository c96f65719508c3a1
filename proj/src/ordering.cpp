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

#include <algorithm>
#include <numeric>

#include <fmt/format.h>

#include "dppfact/sparse.hpp"
#include "detail/instantiate.hpp"

namespace dpp {

namespace {

using Adjacency = std::vector<std::vector<Index>>;

// Breadth-first level structure from `root`; returns the visit order and
// fills `level`.
std::vector<Index> bfs(const Adjacency& adj, Index root, std::vector<Index>& level) {
  std::vector<Index> order{root};
  level[root] = 0;
  for (std::size_t head = 0; head < order.size(); ++head) {
    const Index v = order[head];
    for (Index w : adj[v]) {
      if (level[w] < 0) {
        level[w] = level[v] + 1;
        order.push_back(w);
      }
    }
  }
  return order;
}

// `level` must be all -1 on entry and is restored before returning.
Index pseudo_peripheral(const Adjacency& adj, Index start, std::vector<Index>& level) {
  Index root = start;
  Index eccentricity = -1;
  for (;;) {
    const std::vector<Index> order = bfs(adj, root, level);
    const Index depth = level[order.back()];
    Index best = order.back();
    for (Index v : order) {
      if (level[v] == depth && adj[v].size() < adj[best].size()) best = v;
    }
    for (Index v : order) level[v] = -1;
    if (depth <= eccentricity) return root;
    eccentricity = depth;
    root = best;
  }
}

void dissect(Index width, Index x0, Index x1, Index y0, Index y1, std::vector<Index>& out) {
  const Index w = x1 - x0;
  const Index h = y1 - y0;
  if (w <= 0 || h <= 0) return;
  if (w <= 3 && h <= 3) {
    for (Index y = y0; y < y1; ++y) {
      for (Index x = x0; x < x1; ++x) out.push_back(y * width + x);
    }
    return;
  }
  if (w >= h) {
    const Index xm = x0 + w / 2;
    dissect(width, x0, xm, y0, y1, out);
    dissect(width, xm + 1, x1, y0, y1, out);
    for (Index y = y0; y < y1; ++y) out.push_back(y * width + xm);
  } else {
    const Index ym = y0 + h / 2;
    dissect(width, x0, x1, y0, ym, out);
    dissect(width, x0, x1, ym + 1, y1, out);
    for (Index x = x0; x < x1; ++x) out.push_back(ym * width + x);
  }
}

}  // namespace

std::vector<Index> natural_ordering(Index n) {
  std::vector<Index> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), Index{0});
  return perm;
}

template <Scalar S>
std::vector<Index> reverse_cuthill_mckee(const SparseKernel<S>& kernel) {
  const Index n = kernel.order();
  Adjacency adj(static_cast<std::size_t>(n));
  for (Index c = 0; c < n; ++c) {
    for (Index p = kernel.col_ptr()[c] + 1; p < kernel.col_ptr()[c + 1]; ++p) {
      const Index r = kernel.row_index()[p];
      adj[r].push_back(c);
      adj[c].push_back(r);
    }
  }
  for (auto& neighbours : adj) {
    std::sort(neighbours.begin(), neighbours.end(), [&](Index a, Index b) {
      return adj[a].size() != adj[b].size() ? adj[a].size() < adj[b].size() : a < b;
    });
  }
  std::vector<Index> order;
  order.reserve(static_cast<std::size_t>(n));
  std::vector<Index> level(static_cast<std::size_t>(n), -1);
  std::vector<Index> scratch(static_cast<std::size_t>(n), -1);
  for (Index v = 0; v < n; ++v) {
    if (level[v] >= 0) continue;
    const std::vector<Index> component = bfs(adj, v, scratch);
    Index start = v;
    for (Index u : component) {
      if (adj[u].size() < adj[start].size()) start = u;
      scratch[u] = -1;
    }
    start = pseudo_peripheral(adj, start, scratch);
    const std::vector<Index> visit = bfs(adj, start, level);
    order.insert(order.end(), visit.begin(), visit.end());
  }
  std::reverse(order.begin(), order.end());
  return order;
}

std::vector<Index> grid_nested_dissection(Index width, Index height) {
  if (width < 1 || height < 1) {
    throw Error(ErrorCode::kInvalidArgument, fmt::format("invalid grid {}x{}", width, height));
  }
  std::vector<Index> out;
  out.reserve(static_cast<std::size_t>(width * height));
  dissect(width, 0, width, 0, height, out);
  return out;
}

#define DPP_INSTANTIATE(S) template std::vector<Index> reverse_cuthill_mckee<S>(const SparseKernel<S>&);
DPP_FOR_EACH_SCALAR(DPP_INSTANTIATE)
#undef DPP_INSTANTIATE

}  // namespace dpp
