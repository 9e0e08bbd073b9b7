#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace combiseg {

/// Two-level raster. Pixels are stored row-major; every value is 0 or 1,
/// with 1 meaning text and 0 background. Coordinates are (row, column),
/// i.e. (y, x), matching the usual array convention.
class BinaryImage {
 public:
  BinaryImage() = default;
  BinaryImage(int width, int height, std::uint8_t fill = 0);

  int width() const { return width_; }
  int height() const { return height_; }
  bool empty() const { return pixels_.empty(); }
  std::size_t size() const { return pixels_.size(); }

  std::uint8_t operator()(int y, int x) const {
    return pixels_[static_cast<std::size_t>(y) * width_ + x];
  }
  void set(int y, int x, bool value) {
    pixels_[static_cast<std::size_t>(y) * width_ + x] = value ? 1 : 0;
  }

  std::span<const std::uint8_t> row(int y) const {
    return {pixels_.data() + static_cast<std::size_t>(y) * width_,
            static_cast<std::size_t>(width_)};
  }
  std::span<std::uint8_t> row(int y) {
    return {pixels_.data() + static_cast<std::size_t>(y) * width_,
            static_cast<std::size_t>(width_)};
  }

  // Mutable access is for kernels that only ever write 0 or 1.
  std::span<const std::uint8_t> pixels() const { return pixels_; }
  std::span<std::uint8_t> pixels() { return pixels_; }

  /// Number of text pixels.
  std::size_t count() const;

  /// Fills a rectangle given by inclusive corners, clipped to the image.
  void fill_rect(int x0, int y0, int x1, int y1, bool value = true);

  bool same_size(const BinaryImage& other) const {
    return width_ == other.width_ && height_ == other.height_;
  }

  bool operator==(const BinaryImage&) const = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> pixels_;
};

/// 8-bit single-channel raster.
class GrayImage {
 public:
  GrayImage() = default;
  GrayImage(int width, int height, std::uint8_t fill = 0);

  int width() const { return width_; }
  int height() const { return height_; }
  bool empty() const { return pixels_.empty(); }

  std::uint8_t operator()(int y, int x) const {
    return pixels_[static_cast<std::size_t>(y) * width_ + x];
  }
  std::uint8_t& operator()(int y, int x) {
    return pixels_[static_cast<std::size_t>(y) * width_ + x];
  }

  std::span<const std::uint8_t> pixels() const { return pixels_; }
  std::span<std::uint8_t> pixels() { return pixels_; }

  bool operator==(const GrayImage&) const = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> pixels_;
};

/// Maps text pixels to `text` and background to `background`.
GrayImage to_gray(const BinaryImage& img, std::uint8_t text = 0,
                  std::uint8_t background = 255);

/// All-ones rectangular structuring element of the given width and height.
/// The anchor sits at (floor((w-1)/2), floor((h-1)/2)).
struct StructuringElement {
  int width = 1;
  int height = 1;

  StructuringElement() = default;
  StructuringElement(int w, int h);

  int anchor_x() const { return (width - 1) / 2; }
  int anchor_y() const { return (height - 1) / 2; }

  bool operator==(const StructuringElement&) const = default;
};

}  // namespace combiseg
