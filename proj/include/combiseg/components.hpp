#pragma once

#include <cstdint>
#include <vector>

#include "combiseg/bbox.hpp"
#include "combiseg/image.hpp"

namespace combiseg {

struct Pixel {
  int y = 0;
  int x = 0;
  auto operator<=>(const Pixel&) const = default;
};

/// Per-pixel component labels: 0 is background, components are numbered
/// 1..count in row-major order of their first pixel.
struct Labeling {
  int width = 0;
  int height = 0;
  int count = 0;
  std::vector<std::int32_t> labels;

  std::int32_t at(int y, int x) const {
    return labels[static_cast<std::size_t>(y) * width + x];
  }
};

/// Two-pass, 4-connected labeling over a union-find forest. Iterative, so
/// block size does not affect stack depth.
Labeling label_components(const BinaryImage& img);

/// Pixels of each component, index i holding label i + 1, each row-major.
std::vector<std::vector<Pixel>> component_pixels(const Labeling& labeling);

/// Tight bounding box of each component, index i holding label i + 1.
std::vector<BBox> component_boxes(const Labeling& labeling);

/// Boxes of the components with y_max - y_min >= min_height, in label order.
/// If none qualify the result is the single full-image box.
std::vector<BBox> comp(const BinaryImage& ip, int min_height);

}  // namespace combiseg
