#include "combiseg/morphology.hpp"

#include <algorithm>
#include <cstring>
#include <stdexcept>
#include <vector>

#include "combiseg/simd/kernels.hpp"

namespace combiseg {

namespace {

struct OrOp {
  static constexpr std::uint8_t pad = 0;
  std::uint8_t operator()(std::uint8_t a, std::uint8_t b) const { return a | b; }
  static void rows(const simd::Kernels& k, const std::uint8_t* a, const std::uint8_t* b,
                   std::uint8_t* out, std::size_t n) {
    k.max_u8(a, b, out, n);
  }
};

struct AndOp {
  static constexpr std::uint8_t pad = 1;
  std::uint8_t operator()(std::uint8_t a, std::uint8_t b) const { return a & b; }
  static void rows(const simd::Kernels& k, const std::uint8_t* a, const std::uint8_t* b,
                   std::uint8_t* out, std::size_t n) {
    k.min_u8(a, b, out, n);
  }
};

// out[x] = op over in[x - before .. x - before + size - 1], with Op::pad for
// reads outside [0, n). `prefix` and `suffix` are scratch buffers.
template <class Op>
void sliding_line(const std::uint8_t* in, std::uint8_t* out, int n, int size, int before,
                  std::vector<std::uint8_t>& padded, std::vector<std::uint8_t>& prefix,
                  std::vector<std::uint8_t>& suffix) {
  const Op op;
  const int len = n + size - 1;
  padded.assign(static_cast<std::size_t>(len), Op::pad);
  std::memcpy(padded.data() + before, in, static_cast<std::size_t>(n));
  prefix.resize(static_cast<std::size_t>(len));
  suffix.resize(static_cast<std::size_t>(len));

  for (int block = 0; block < len; block += size) {
    const int end = std::min(block + size, len);
    prefix[block] = padded[block];
    for (int i = block + 1; i < end; ++i) prefix[i] = op(prefix[i - 1], padded[i]);
    suffix[end - 1] = padded[end - 1];
    for (int i = end - 2; i >= block; --i) suffix[i] = op(suffix[i + 1], padded[i]);
  }
  for (int x = 0; x < n; ++x) out[x] = op(suffix[x], prefix[x + size - 1]);
}

template <class Op>
BinaryImage horizontal_pass(const BinaryImage& img, int size, int before) {
  if (size == 1) return img;
  BinaryImage out(img.width(), img.height());
  std::vector<std::uint8_t> padded, prefix, suffix;
  for (int y = 0; y < img.height(); ++y)
    sliding_line<Op>(img.row(y).data(), out.row(y).data(), img.width(), size, before, padded,
                     prefix, suffix);
  return out;
}

// Same recurrence as sliding_line, but whole rows at a time so the inner
// loops are the vector kernels.
template <class Op>
BinaryImage vertical_pass(const BinaryImage& img, int size, int before) {
  if (size == 1) return img;
  const simd::Kernels& k = simd::active();
  const int w = img.width();
  const int h = img.height();
  const auto stride = static_cast<std::size_t>(w);
  const int len = h + size - 1;

  const std::vector<std::uint8_t> pad_row(stride, Op::pad);
  auto source = [&](int r) -> const std::uint8_t* {
    const int y = r - before;
    return (y >= 0 && y < h) ? img.row(y).data() : pad_row.data();
  };

  std::vector<std::uint8_t> prefix(static_cast<std::size_t>(len) * stride);
  std::vector<std::uint8_t> suffix(static_cast<std::size_t>(len) * stride);
  auto prefix_row = [&](int r) { return prefix.data() + static_cast<std::size_t>(r) * stride; };
  auto suffix_row = [&](int r) { return suffix.data() + static_cast<std::size_t>(r) * stride; };

  for (int block = 0; block < len; block += size) {
    const int end = std::min(block + size, len);
    std::memcpy(prefix_row(block), source(block), stride);
    for (int r = block + 1; r < end; ++r)
      Op::rows(k, prefix_row(r - 1), source(r), prefix_row(r), stride);
    // Suffix rows are only read at r < h.
    if (block < h) {
      std::memcpy(suffix_row(end - 1), source(end - 1), stride);
      for (int r = end - 2; r >= block; --r)
        Op::rows(k, suffix_row(r + 1), source(r), suffix_row(r), stride);
    }
  }

  BinaryImage out(w, h);
  for (int y = 0; y < h; ++y)
    Op::rows(k, suffix_row(y), prefix_row(y + size - 1), out.row(y).data(), stride);
  return out;
}

template <class Op>
BinaryImage naive_pass(const BinaryImage& img, StructuringElement e, int before_x,
                       int before_y) {
  const Op op;
  const std::uint8_t identity = Op::pad ? 1 : 0;
  BinaryImage out(img.width(), img.height());
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) {
      std::uint8_t acc = identity;
      for (int dy = 0; dy < e.height && acc == identity; ++dy) {
        const int yy = y - before_y + dy;
        for (int dx = 0; dx < e.width; ++dx) {
          const int xx = x - before_x + dx;
          const bool inside = yy >= 0 && yy < img.height() && xx >= 0 && xx < img.width();
          acc = op(acc, inside ? img(yy, xx) : Op::pad);
          if (acc != identity) break;
        }
      }
      out.set(y, x, acc != 0);
    }
  }
  return out;
}

void require_same_size(const BinaryImage& a, const BinaryImage& b, const char* what) {
  if (!a.same_size(b))
    throw std::invalid_argument(std::string(what) + ": image dimensions differ");
}

}  // namespace

BinaryImage dilate(const BinaryImage& img, StructuringElement e, MorphEngine engine) {
  const int before_x = e.width - 1 - e.anchor_x();
  const int before_y = e.height - 1 - e.anchor_y();
  if (img.empty()) return img;
  if (engine == MorphEngine::Naive) return naive_pass<OrOp>(img, e, before_x, before_y);
  return vertical_pass<OrOp>(horizontal_pass<OrOp>(img, e.width, before_x), e.height,
                             before_y);
}

BinaryImage erode(const BinaryImage& img, StructuringElement e, MorphEngine engine) {
  if (img.empty()) return img;
  if (engine == MorphEngine::Naive)
    return naive_pass<AndOp>(img, e, e.anchor_x(), e.anchor_y());
  return vertical_pass<AndOp>(horizontal_pass<AndOp>(img, e.width, e.anchor_x()), e.height,
                              e.anchor_y());
}

BinaryImage open(const BinaryImage& img, StructuringElement e, MorphEngine engine) {
  return dilate(erode(img, e, engine), e, engine);
}

BinaryImage add(const BinaryImage& a, const BinaryImage& b) {
  require_same_size(a, b, "add");
  BinaryImage out(a.width(), a.height());
  simd::active().max_u8(a.pixels().data(), b.pixels().data(), out.pixels().data(), a.size());
  return out;
}

BinaryImage subtract(const BinaryImage& a, const BinaryImage& b) {
  require_same_size(a, b, "subtract");
  BinaryImage out(a.width(), a.height());
  simd::active().sub_sat_u8(a.pixels().data(), b.pixels().data(), out.pixels().data(),
                            a.size());
  return out;
}

BinaryImage invert(const BinaryImage& img) {
  BinaryImage out(img.width(), img.height());
  simd::active().invert_binary(img.pixels().data(), out.pixels().data(), img.size());
  return out;
}

}  // namespace combiseg
