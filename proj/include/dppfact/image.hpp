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


// Binary P6 raster images of spanning trees and domino tilings.
//
// Pixel (0, 0) is the top-left corner; drawing coordinates have y pointing
// up, so rows are flipped on output.
//
// Spanning trees: vertex v is drawn at ((px + 1) * cell, (py + 1) * cell)
// from the lower-left corner, where (px, py) is its position; kept edges are
// black lines on white.
//
// Tilings: unit square (x, y) of the diamond, lower-left corner in
// [-d, d)^2, covers pixels [(x + d) * cell, (x + d + 1) * cell) counted from
// the left and from the bottom. Dominoes are filled by orientation class
// (left blue, right red, up yellow, down green) with a one-pixel black
// border when cell >= 3.

#ifndef DPPFACT_IMAGE_HPP_
#define DPPFACT_IMAGE_HPP_

#include <cstdint>
#include <iosfwd>
#include <string>

#include "dppfact/aztec.hpp"
#include "dppfact/graph.hpp"

namespace dpp {

struct Rgb {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;
  bool operator==(const Rgb&) const = default;
};

inline constexpr Rgb kWhite{255, 255, 255};
inline constexpr Rgb kBlack{0, 0, 0};

/// Orientation class colour used for tilings.
Rgb orientation_colour(TileOrientation orientation);

class Image {
 public:
  Image(Index width, Index height, Rgb background = kWhite);

  Index width() const { return width_; }
  Index height() const { return height_; }
  /// Row-major from the top-left pixel.
  const std::vector<Rgb>& pixels() const { return pixels_; }

  Rgb at(Index x, Index y) const { return pixels_[static_cast<std::size_t>(y * width_ + x)]; }
  /// Out-of-range coordinates are ignored.
  void set(Index x, Index y, Rgb colour);
  void fill_rect(Index x0, Index y0, Index x1, Index y1, Rgb colour);
  void draw_line(Index x0, Index y0, Index x1, Index y1, Rgb colour);

  void write_ppm(std::ostream& out) const;
  void write_ppm(const std::string& path) const;
  /// Accepts P6 with maxval 255; throws ParseError otherwise.
  static Image read_ppm(std::istream& in);

 private:
  Index width_;
  Index height_;
  std::vector<Rgb> pixels_;
};

/// Requires vertex positions.
Image render_spanning_tree(const UndirectedGraph& graph, const std::vector<Index>& kept, Index cell = 8);

Image render_tiling(const AztecDiamond& diamond, const std::vector<Index>& kept, Index cell = 8);

}  // namespace dpp

#endif  // DPPFACT_IMAGE_HPP_
