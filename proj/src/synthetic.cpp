#include "combiseg/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace combiseg {

namespace {

// std distributions are implementation-defined; these are not, so a seed
// renders the same block everywhere.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  int uniform(int lo, int hi) {  // inclusive
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<int>(engine_() % span);
  }
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  bool chance(double p) { return unit() < p; }

 private:
  std::mt19937_64 engine_;
};

class Painter {
 public:
  explicit Painter(BinaryImage& img) : img_(img) {}

  void rect(int x0, int y0, int x1, int y1, bool value = true) {
    img_.fill_rect(x0, y0, x1, y1, value);
    if (value && x0 <= x1 && y0 <= y1) {
      const BBox r{x0, y0, x1, y1};
      ink_ = has_ink_ ? ink_.united(r) : r;
      has_ink_ = true;
    }
  }

  void start_line() { has_ink_ = false; }
  BBox line_box() const { return ink_; }

 private:
  BinaryImage& img_;
  BBox ink_{};
  bool has_ink_ = false;
};

int scaled(int h, double f, int at_least = 1) {
  return std::max(at_least, static_cast<int>(std::lround(h * f)));
}

void draw_glyph_line(Painter& paint, Rng& rng, int x0, int x1, int top, int h) {
  const int asc_end = top + scaled(h, 0.25);
  const int base = top + scaled(h, 0.75);
  const int bottom = top + h - 1;
  const int stem = scaled(h, 0.15);
  const int letter_space = scaled(h, 0.08);
  const int word_space = scaled(h, 0.35, 2);

  int x = x0;
  int in_word = 0;
  int word_len = rng.uniform(3, 8);
  for (int i = 0;; ++i) {
    const int gw = rng.uniform(scaled(h, 0.3, 2), scaled(h, 0.6, 3));
    if (x + gw - 1 > x1 && i >= 2) break;
    const int right = std::min(x + gw - 1, x1);
    paint.rect(x, asc_end, right, base - 1);

    const bool ascender = i == 0 || (i > 1 && rng.chance(0.2));
    const bool descender = i == 1 || (i > 1 && !ascender && rng.chance(0.15));
    if (ascender) paint.rect(x, top, std::min(x + stem - 1, right), asc_end - 1);
    if (descender) paint.rect(std::max(x, right - stem + 1), base, right, bottom);

    const int body = base - asc_end;
    if (gw >= 6 && body >= 6 && rng.chance(0.3))
      paint.rect(x + gw / 3, asc_end + body / 3, x + 2 * gw / 3 - 1, asc_end + 2 * body / 3 - 1,
                 false);

    x = right + 1 + letter_space;
    if (++in_word == word_len) {
      x += word_space;
      in_word = 0;
      word_len = rng.uniform(3, 8);
    }
    if (x > x1) break;
  }
}

void draw_dashed_line(Painter& paint, int x0, int x1, int top, int h) {
  const int dash = h;
  const int space = std::max(1, h / 2);
  for (int x = x0; x <= x1; x += dash + space)
    paint.rect(x, top, std::min(x + dash - 1, x1), top + h - 1);
}

void draw_ellipse_ring(BinaryImage& img, double cx, double cy, double ax, double ay,
                       double thickness) {
  const int x_lo = static_cast<int>(std::floor(cx - ax));
  const int x_hi = static_cast<int>(std::ceil(cx + ax));
  const int y_lo = static_cast<int>(std::floor(cy - ay));
  const int y_hi = static_cast<int>(std::ceil(cy + ay));
  for (int y = std::max(0, y_lo); y <= std::min(img.height() - 1, y_hi); ++y) {
    for (int x = std::max(0, x_lo); x <= std::min(img.width() - 1, x_hi); ++x) {
      const double nx = (x - cx) / ax;
      const double ny = (y - cy) / ay;
      const double r = std::sqrt(nx * nx + ny * ny);
      // Distance to the outline, approximately, in pixels.
      const double d = (1.0 - r) * std::min(ax, ay);
      if (d >= 0.0 && d < thickness) img.set(y, x, true);
    }
  }
}

void draw_hatching(BinaryImage& img, double cx, double cy, double ax, double ay, int pitch,
                   int stroke) {
  for (int x = static_cast<int>(cx - ax) + pitch / 2; x <= cx + ax; x += pitch) {
    const double nx = (x - cx) / ax;
    if (std::abs(nx) >= 1.0) continue;
    const double half = ay * std::sqrt(1.0 - nx * nx);
    img.fill_rect(x, static_cast<int>(std::ceil(cy - half)), x + stroke - 1,
                  static_cast<int>(std::floor(cy + half)));
  }
}

}  // namespace

SyntheticBlock generate_synthetic(const SyntheticSpec& spec) {
  const int h = spec.line_height;
  const int margin = spec.margin < 0 ? h : spec.margin;
  if (spec.lines < 1) throw std::invalid_argument("synthetic block needs at least one line");
  if (h < 4) throw std::invalid_argument("line height must be >= 4");
  if (spec.gap < 0) throw std::invalid_argument("line gap must be >= 0");
  if (margin < 4) throw std::invalid_argument("margin must be >= 4");
  if (!(spec.last_line_fraction > 0.0 && spec.last_line_fraction <= 1.0))
    throw std::invalid_argument("last line fraction must lie in (0, 1]");
  if (spec.salt_noise < 0.0 || spec.salt_noise > 1.0)
    throw std::invalid_argument("salt noise must lie in [0, 1]");
  if (spec.stamp_after_line >= spec.lines - 1)
    throw std::invalid_argument("stamp needs a line below the one it follows");

  const int border = std::max(3, h / 10);
  const int x0 = margin;
  const int x1 = spec.width - 1 - margin - (spec.right_border ? 2 * border : 0);
  if (x1 - x0 + 1 < 2 * h)
    throw std::invalid_argument("block too narrow for its margins and line height");
  const int height = 2 * margin + spec.lines * h + (spec.lines - 1) * spec.gap;

  SyntheticBlock block{BinaryImage(spec.width, height), {}};
  Rng rng(spec.seed);
  Painter paint(block.image);

  auto line_top = [&](int i) { return margin + i * (h + spec.gap); };
  for (int i = 0; i < spec.lines; ++i) {
    const int top = line_top(i);
    const bool last = i == spec.lines - 1;
    const int end = last ? x0 + static_cast<int>((x1 - x0) * spec.last_line_fraction) : x1;
    paint.start_line();
    switch (spec.style) {
      case LineStyle::Glyphs: draw_glyph_line(paint, rng, x0, std::max(end, x0 + h), top, h); break;
      case LineStyle::Dashed: draw_dashed_line(paint, x0, std::max(end, x0 + h), top, h); break;
      case LineStyle::Solid: paint.rect(x0, top, std::max(end, x0 + h), top + h - 1); break;
    }
    block.gt.push_back(paint.line_box());
  }

  if (spec.stamp_after_line >= 0) {
    const int k = spec.stamp_after_line;
    const double cy = (line_top(k) + h - 1 + line_top(k + 1)) / 2.0;
    const double ring = std::max(2, h / 10);
    if (spec.dense_stamp) {
      // Wide oval with vertical hatching: bridges the gap over a stretch
      // longer than the separator dilation can cover.
      const double ay = spec.gap / 2.0 + 0.9 * h;
      const double ax = std::min<double>(rng.uniform(3 * h + 100, 5 * h + 200), (x1 - x0) / 2.0 - 1.0);
      const double cx = rng.uniform(static_cast<int>(x0 + ax), static_cast<int>(x1 - ax));
      draw_ellipse_ring(block.image, cx, cy, ax, ay, ring);
      draw_hatching(block.image, cx, cy, ax, ay, std::max(4, h / 2), 2);
    } else {
      const double r = spec.gap / 2.0 + rng.uniform(scaled(h, 0.5), h);
      const int lo = static_cast<int>(x0 + r);
      const int hi = static_cast<int>(x1 - r);
      if (hi < lo) throw std::invalid_argument("stamp does not fit the block");
      draw_ellipse_ring(block.image, rng.uniform(lo, hi), cy, r, r, ring);
    }
  }

  if (spec.right_border) {
    const int bx = spec.width - 1 - margin / 2 - border;
    block.image.fill_rect(bx, 0, bx + border - 1, height - 1);
  }
  if (spec.top_rule) {
    const int by = std::max(0, margin / 3);
    block.image.fill_rect(0, by, spec.width - 1, by + 1);
  }

  if (spec.salt_noise > 0.0)
    for (auto& px : block.image.pixels())
      if (rng.chance(spec.salt_noise)) px = 1;

  return block;
}

SyntheticSpec random_spec(std::uint64_t seed, bool wide_gaps) {
  Rng rng(seed * 0x9E3779B97F4A7C15ULL + 7);
  SyntheticSpec s;
  s.seed = seed;
  s.lines = rng.uniform(2, 20);
  s.line_height = rng.uniform(20, 60);
  s.gap = rng.uniform(8, wide_gaps ? 30 : std::clamp(2 * s.line_height / 3, 8, 30));
  s.width = std::max(1000, 25 * s.line_height);
  s.last_line_fraction = 0.3 + 0.7 * rng.unit();
  s.right_border = true;
  s.top_rule = rng.chance(0.3);
  s.salt_noise = rng.chance(0.5) ? 0.0005 : 0.0;
  if (rng.chance(0.7)) {
    s.stamp_after_line = rng.uniform(0, s.lines - 2);
    s.dense_stamp = true;
  }
  return s;
}

SyntheticSpec stamped_block_spec() {
  SyntheticSpec s;
  s.lines = 4;
  s.line_height = 43;
  s.gap = 20;
  s.width = 1000;
  s.right_border = true;
  s.stamp_after_line = 2;
  s.dense_stamp = true;
  s.seed = 9;
  return s;
}

SyntheticSpec bench_block_spec(std::uint64_t seed) {
  SyntheticSpec s;
  s.lines = 5;
  s.line_height = 44;
  s.gap = 20;
  s.margin = 50;
  s.width = 1000;
  s.right_border = true;
  if (seed % 2) {
    s.stamp_after_line = static_cast<int>(seed / 2 % 4);
    s.dense_stamp = true;
  }
  s.seed = seed;
  return s;
}

}  // namespace combiseg
