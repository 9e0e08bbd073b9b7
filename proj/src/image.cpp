#include "combiseg/image.hpp"

#include <algorithm>
#include <stdexcept>

#include "combiseg/simd/kernels.hpp"

namespace combiseg {

namespace {

std::size_t checked_area(int width, int height) {
  if (width < 0 || height < 0)
    throw std::invalid_argument("image dimensions must be non-negative");
  if ((width == 0) != (height == 0))
    throw std::invalid_argument("image must be 0x0 or have both sides >= 1");
  return static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
}

}  // namespace

BinaryImage::BinaryImage(int width, int height, std::uint8_t fill)
    : width_(width),
      height_(height),
      pixels_(checked_area(width, height), fill ? 1 : 0) {}

std::size_t BinaryImage::count() const {
  return static_cast<std::size_t>(simd::active().sum(pixels_.data(), pixels_.size()));
}

void BinaryImage::fill_rect(int x0, int y0, int x1, int y1, bool value) {
  x0 = std::max(x0, 0);
  y0 = std::max(y0, 0);
  x1 = std::min(x1, width_ - 1);
  y1 = std::min(y1, height_ - 1);
  if (x0 > x1 || y0 > y1) return;
  for (int y = y0; y <= y1; ++y) {
    auto r = row(y);
    std::fill(r.begin() + x0, r.begin() + x1 + 1, value ? 1 : 0);
  }
}

GrayImage::GrayImage(int width, int height, std::uint8_t fill)
    : width_(width), height_(height), pixels_(checked_area(width, height), fill) {}

GrayImage to_gray(const BinaryImage& img, std::uint8_t text, std::uint8_t background) {
  GrayImage out(img.width(), img.height());
  auto src = img.pixels();
  auto dst = out.pixels();
  for (std::size_t i = 0; i < src.size(); ++i) dst[i] = src[i] ? text : background;
  return out;
}

StructuringElement::StructuringElement(int w, int h) : width(w), height(h) {
  if (w < 1 || h < 1)
    throw std::invalid_argument("structuring element sides must be >= 1");
}

}  // namespace combiseg
