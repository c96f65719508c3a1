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


#include "dppfact/image.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>

#include <fmt/format.h>

namespace dpp {

Rgb orientation_colour(TileOrientation orientation) {
  switch (orientation) {
    case TileOrientation::kLeft: return {40, 80, 220};
    case TileOrientation::kRight: return {220, 40, 40};
    case TileOrientation::kUp: return {240, 210, 40};
    case TileOrientation::kDown: return {40, 170, 70};
  }
  return kBlack;
}

Image::Image(Index width, Index height, Rgb background) : width_(width), height_(height) {
  if (width < 0 || height < 0) throw Error(ErrorCode::kInvalidArgument, "negative image size");
  pixels_.assign(static_cast<std::size_t>(width * height), background);
}

void Image::set(Index x, Index y, Rgb colour) {
  if (x < 0 || y < 0 || x >= width_ || y >= height_) return;
  pixels_[static_cast<std::size_t>(y * width_ + x)] = colour;
}

void Image::fill_rect(Index x0, Index y0, Index x1, Index y1, Rgb colour) {
  for (Index y = std::max<Index>(y0, 0); y < std::min(y1, height_); ++y) {
    for (Index x = std::max<Index>(x0, 0); x < std::min(x1, width_); ++x) set(x, y, colour);
  }
}

// Bresenham.
void Image::draw_line(Index x0, Index y0, Index x1, Index y1, Rgb colour) {
  const Index dx = std::abs(x1 - x0);
  const Index dy = -std::abs(y1 - y0);
  const Index sx = x0 < x1 ? 1 : -1;
  const Index sy = y0 < y1 ? 1 : -1;
  Index err = dx + dy;
  while (true) {
    set(x0, y0, colour);
    if (x0 == x1 && y0 == y1) break;
    const Index e2 = 2 * err;
    if (e2 >= dy) {
      err += dy;
      x0 += sx;
    }
    if (e2 <= dx) {
      err += dx;
      y0 += sy;
    }
  }
}

void Image::write_ppm(std::ostream& out) const {
  out << "P6\n" << width_ << ' ' << height_ << "\n255\n";
  for (const Rgb& p : pixels_) {
    const char bytes[3] = {static_cast<char>(p.r), static_cast<char>(p.g), static_cast<char>(p.b)};
    out.write(bytes, 3);
  }
  if (!out) throw Error(ErrorCode::kIoError, "failed to write image");
}

void Image::write_ppm(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIoError, fmt::format("cannot open '{}'", path));
  write_ppm(out);
}

Image Image::read_ppm(std::istream& in) {
  auto field = [&in]() {
    std::string token;
    while (in >> std::ws && in.peek() == '#') std::getline(in, token);
    if (!(in >> token)) throw Error(ErrorCode::kParseError, "truncated PPM header");
    return token;
  };
  if (field() != "P6") throw Error(ErrorCode::kParseError, "not a P6 image");
  const Index width = std::stoll(field());
  const Index height = std::stoll(field());
  if (field() != "255") throw Error(ErrorCode::kParseError, "only maxval 255 is supported");
  in.get();
  Image image(width, height);
  for (Rgb& p : image.pixels_) {
    char bytes[3];
    if (!in.read(bytes, 3)) throw Error(ErrorCode::kParseError, "truncated PPM data");
    p = {static_cast<std::uint8_t>(bytes[0]), static_cast<std::uint8_t>(bytes[1]),
         static_cast<std::uint8_t>(bytes[2])};
  }
  return image;
}

Image render_spanning_tree(const UndirectedGraph& graph, const std::vector<Index>& kept, Index cell) {
  const auto& pos = graph.positions();
  if (pos.empty()) throw Error(ErrorCode::kInvalidArgument, "graph has no drawing positions");
  double max_x = 0.0;
  double max_y = 0.0;
  for (const auto& p : pos) {
    max_x = std::max(max_x, p[0]);
    max_y = std::max(max_y, p[1]);
  }
  const Index width = static_cast<Index>(std::lround((max_x + 2.0) * cell));
  const Index height = static_cast<Index>(std::lround((max_y + 2.0) * cell));
  Image image(width, height);
  auto px = [&](Index v) { return static_cast<Index>(std::lround((pos[v][0] + 1.0) * cell)); };
  auto py = [&](Index v) { return height - 1 - static_cast<Index>(std::lround((pos[v][1] + 1.0) * cell)); };
  for (Index e : kept) {
    if (e < 0 || e >= graph.edge_count()) throw Error(ErrorCode::kInvalidArgument, "edge index out of range");
    const Edge& edge = graph.edges()[e];
    image.draw_line(px(edge.u), py(edge.u), px(edge.v), py(edge.v), kBlack);
  }
  return image;
}

Image render_tiling(const AztecDiamond& diamond, const std::vector<Index>& kept, Index cell) {
  const Index d = diamond.order();
  const Index side = 2 * d * cell;
  Image image(side, side);
  for (Index e : kept) {
    if (e < 0 || e >= diamond.domino_count()) throw Error(ErrorCode::kInvalidArgument, "domino index out of range");
    const Domino& domino = diamond.dominoes()[e];
    const auto& w = diamond.whites()[domino.white];
    const auto& b = diamond.blacks()[domino.black];
    const Index x0 = (std::min(w[0], b[0]) + d) * cell;
    const Index x1 = (std::max(w[0], b[0]) + d + 1) * cell;
    // Rows count down from the top.
    const Index y0 = (d - 1 - std::max(w[1], b[1])) * cell;
    const Index y1 = (d - std::min(w[1], b[1])) * cell;
    const bool border = cell >= 3;
    image.fill_rect(x0, y0, x1, y1, border ? kBlack : orientation_colour(domino.orientation));
    if (border) image.fill_rect(x0 + 1, y0 + 1, x1 - 1, y1 - 1, orientation_colour(domino.orientation));
  }
  return image;
}

}  // namespace dpp
