#pragma once

#include <cstdint>
#include <vector>

#include "combiseg/bbox.hpp"
#include "combiseg/image.hpp"

namespace combiseg {

enum class LineStyle {
  Glyphs,  // blocky glyphs with ascenders, descenders and word gaps
  Dashed,  // full-height dashes
  Solid,   // one solid bar per line
};

/// Geometry and defects of a generated text block. Sizes are in pixels.
struct SyntheticSpec {
  int lines = 4;
  int line_height = 30;
  int gap = 15;
  int width = 1000;
  int margin = -1;                  // < 0: one line height
  LineStyle style = LineStyle::Glyphs;
  double last_line_fraction = 1.0;  // length of the last line relative to the others
  double salt_noise = 0.0;          // probability of a stray text pixel
  bool right_border = false;        // full-height vertical rule near the right edge
  bool top_rule = false;            // full-width horizontal rule near the top edge
  /// Ring stamp bridging line k and k + 1 (0-based); negative for none.
  int stamp_after_line = -1;
  /// Adds vertical hatching to the stamp, wide enough to survive separators.
  bool dense_stamp = false;
  std::uint64_t seed = 1;
};

struct SyntheticBlock {
  BinaryImage image;
  std::vector<BBox> gt;  // tight box of each rendered line, top to bottom
};

/// Renders a block. Throws std::invalid_argument when the geometry does not
/// fit (no lines, lines too thin, negative gap, lines narrower than a glyph).
SyntheticBlock generate_synthetic(const SyntheticSpec& spec);

/// Random block drawn from a fixed recipe: 2-20 glyph lines of height 20-60,
/// gaps 8-30 but at most two thirds of the line height, a right border, and a
/// dense stamp on most blocks. Width grows with the line height so every line
/// holds a few dozen glyphs. With wide_gaps the gap ignores the line height.
SyntheticSpec random_spec(std::uint64_t seed, bool wide_gaps = false);

/// Four glyph lines with a right border and a dense stamp across the gap
/// between the last two lines.
SyntheticSpec stamped_block_spec();

/// 1000x400 block of five glyph lines with a right border; odd seeds add a
/// dense stamp.
SyntheticSpec bench_block_spec(std::uint64_t seed);

}  // namespace combiseg
