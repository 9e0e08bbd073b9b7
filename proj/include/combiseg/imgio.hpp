#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "combiseg/bbox.hpp"
#include "combiseg/image.hpp"

namespace combiseg {

class ImageError : public std::runtime_error {
 public:
  enum class Kind { MissingFile, UnsupportedFormat, CorruptData, WriteFailed };

  ImageError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

/// Interleaved 8-bit RGB raster.
struct RgbImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> rgb;

  std::uint8_t* at(int y, int x) {
    return rgb.data() + (static_cast<std::size_t>(y) * width + x) * 3;
  }
  const std::uint8_t* at(int y, int x) const {
    return rgb.data() + (static_cast<std::size_t>(y) * width + x) * 3;
  }
};

/// Reads a PNG and converts it to 8-bit luma (0.299 R + 0.587 G + 0.114 B,
/// transparent pixels composited over white).
GrayImage load(const std::filesystem::path& path);

void save_png(const GrayImage& img, const std::filesystem::path& path);
void save_png(const RgbImage& img, const std::filesystem::path& path);

/// Writes text pixels black on white.
void save_png(const BinaryImage& img, const std::filesystem::path& path);

/// Threshold t maximizing the between-class variance of the split
/// {v <= t} / {v > t}; the lowest such t on ties. Empty when the image has
/// fewer than two distinct intensities.
std::optional<int> otsu_threshold(const GrayImage& img);

/// Binarizes with Otsu's threshold. With text_is_dark, intensities <= t
/// become text (1); otherwise intensities > t do. A constant image yields
/// an all-background result.
BinaryImage otsu_binarize(const GrayImage& img, bool text_is_dark = true);

/// Colour copy of `img` with a 1-pixel red outline per box. Throws
/// std::invalid_argument for boxes outside the image.
RgbImage draw_overlay(const GrayImage& img, std::span<const BBox> boxes);

void render_overlay(const GrayImage& img, std::span<const BBox> boxes,
                    const std::filesystem::path& path);

}  // namespace combiseg
