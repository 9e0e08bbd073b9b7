#pragma once

namespace combiseg {

/// Average text line height, in pixels, of the corpus the defaults were
/// tuned on. Used to rescale the defaults for other scan resolutions.
inline constexpr double kReferenceLineHeight = 42.9;

/// Tuning parameters. The config file keys p1..p8 map onto the fields in
/// declaration order.
struct Params {
  int preprocess_size = 100;     // p1: side of the rule-removal openings
  int text_dilation = 90;        // p2: horizontal dilation joining characters
  int protection_height = 25;    // p3: height of the background protection opening
  int separator_width = 35;      // p4: minimum width of a background separator
  int separator_dilation = 330;  // p5: horizontal dilation of separators
  int min_line_height = 14;      // p6
  double peak_threshold = 0.3;   // p7: relative peak height, in (0, 1)
  int height_adjustment = 5;     // p8: vertical padding added to output boxes

  /// Throws std::invalid_argument naming the first offending field.
  void validate() const;

  bool operator==(const Params&) const = default;
};

/// Scales every pixel-valued field by line_height / kReferenceLineHeight,
/// rounding to the nearest integer (at least 1; p8 may reach 0).
Params scaled_params(const Params& base, double line_height);

}  // namespace combiseg
