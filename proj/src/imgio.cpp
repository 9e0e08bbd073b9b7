#include "combiseg/imgio.hpp"

#include <png.h>

#include <array>
#include <cstring>
#include <fstream>

namespace combiseg {

namespace fs = std::filesystem;

namespace {

struct PngImage {
  png_image image{};
  PngImage() {
    image.version = PNG_IMAGE_VERSION;
  }
  ~PngImage() { png_image_free(&image); }
  PngImage(const PngImage&) = delete;
  PngImage& operator=(const PngImage&) = delete;
};

bool has_png_signature(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::array<unsigned char, 8> sig{};
  in.read(reinterpret_cast<char*>(sig.data()), sig.size());
  return in.gcount() == static_cast<std::streamsize>(sig.size()) &&
         png_sig_cmp(sig.data(), 0, sig.size()) == 0;
}

void write(png_image& image, const void* buffer, const fs::path& path) {
  if (!png_image_write_to_file(&image, path.string().c_str(), 0, buffer, 0, nullptr))
    throw ImageError(ImageError::Kind::WriteFailed,
                     "cannot write " + path.string() + ": " + image.message);
}

}  // namespace

GrayImage load(const fs::path& path) {
  std::error_code ec;
  if (!fs::is_regular_file(path, ec))
    throw ImageError(ImageError::Kind::MissingFile, "no such file: " + path.string());
  if (!has_png_signature(path))
    throw ImageError(ImageError::Kind::UnsupportedFormat, "not a PNG file: " + path.string());

  PngImage png;
  if (!png_image_begin_read_from_file(&png.image, path.string().c_str()))
    throw ImageError(ImageError::Kind::CorruptData,
                     "cannot decode " + path.string() + ": " + png.image.message);
  png.image.format = PNG_FORMAT_RGBA;
  const auto w = static_cast<int>(png.image.width);
  const auto h = static_cast<int>(png.image.height);
  std::vector<std::uint8_t> rgba(PNG_IMAGE_SIZE(png.image));
  if (!png_image_finish_read(&png.image, nullptr, rgba.data(), 0, nullptr))
    throw ImageError(ImageError::Kind::CorruptData,
                     "cannot decode " + path.string() + ": " + png.image.message);

  GrayImage out(w, h);
  auto dst = out.pixels();
  for (std::size_t i = 0; i < dst.size(); ++i) {
    const std::uint8_t* p = rgba.data() + 4 * i;
    const unsigned luma = (299u * p[0] + 587u * p[1] + 114u * p[2] + 500u) / 1000u;
    const unsigned a = p[3];
    dst[i] = static_cast<std::uint8_t>((luma * a + 255u * (255u - a) + 127u) / 255u);
  }
  return out;
}

void save_png(const GrayImage& img, const fs::path& path) {
  PngImage png;
  png.image.width = static_cast<png_uint_32>(img.width());
  png.image.height = static_cast<png_uint_32>(img.height());
  png.image.format = PNG_FORMAT_GRAY;
  write(png.image, img.pixels().data(), path);
}

void save_png(const RgbImage& img, const fs::path& path) {
  PngImage png;
  png.image.width = static_cast<png_uint_32>(img.width);
  png.image.height = static_cast<png_uint_32>(img.height);
  png.image.format = PNG_FORMAT_RGB;
  write(png.image, img.rgb.data(), path);
}

void save_png(const BinaryImage& img, const fs::path& path) { save_png(to_gray(img), path); }

std::optional<int> otsu_threshold(const GrayImage& img) {
  std::array<std::int64_t, 256> hist{};
  for (std::uint8_t v : img.pixels()) ++hist[v];

  const auto total = static_cast<std::int64_t>(img.pixels().size());
  std::int64_t weighted_total = 0;
  for (int v = 0; v < 256; ++v) weighted_total += v * hist[v];

  // Between-class variance up to the constant factor 1 / total^2:
  //   (weighted_total * w0 - total * sum0)^2 / (w0 * w1)
  // Identical (w0, sum0) pairs give bit-identical scores, so splits that
  // only differ by empty bins tie exactly.
  std::optional<int> best;
  long double best_score = -1;
  std::int64_t w0 = 0;
  std::int64_t sum0 = 0;
  for (int t = 0; t < 255; ++t) {
    w0 += hist[t];
    sum0 += t * hist[t];
    const std::int64_t w1 = total - w0;
    if (w0 == 0 || w1 == 0) continue;
    const long double diff = static_cast<long double>(weighted_total) * w0 -
                             static_cast<long double>(total) * sum0;
    const long double score = diff * diff / (static_cast<long double>(w0) * w1);
    if (score > best_score) {
      best_score = score;
      best = t;
    }
  }
  return best;
}

BinaryImage otsu_binarize(const GrayImage& img, bool text_is_dark) {
  BinaryImage out(img.width(), img.height());
  const std::optional<int> t = otsu_threshold(img);
  if (!t) return out;
  auto src = img.pixels();
  auto dst = out.pixels();
  for (std::size_t i = 0; i < src.size(); ++i)
    dst[i] = (src[i] <= *t) == text_is_dark ? 1 : 0;
  return out;
}

RgbImage draw_overlay(const GrayImage& img, std::span<const BBox> boxes) {
  RgbImage out{img.width(), img.height(), {}};
  out.rgb.resize(static_cast<std::size_t>(img.width()) * img.height() * 3);
  auto src = img.pixels();
  for (std::size_t i = 0; i < src.size(); ++i)
    std::memset(out.rgb.data() + 3 * i, src[i], 3);

  auto paint = [&](int y, int x) {
    std::uint8_t* p = out.at(y, x);
    p[0] = 255;
    p[1] = 0;
    p[2] = 0;
  };
  for (const BBox& b : boxes) {
    if (b.x_min < 0 || b.y_min < 0 || b.x_max >= img.width() || b.y_max >= img.height() ||
        b.x_min > b.x_max || b.y_min > b.y_max)
      throw std::invalid_argument("overlay box outside image");
    for (int x = b.x_min; x <= b.x_max; ++x) {
      paint(b.y_min, x);
      paint(b.y_max, x);
    }
    for (int y = b.y_min; y <= b.y_max; ++y) {
      paint(y, b.x_min);
      paint(y, b.x_max);
    }
  }
  return out;
}

void render_overlay(const GrayImage& img, std::span<const BBox> boxes, const fs::path& path) {
  save_png(draw_overlay(img, boxes), path);
}

}  // namespace combiseg
