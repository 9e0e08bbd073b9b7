#pragma once

#include <filesystem>
#include <iosfwd>

#include "combiseg/evaluation.hpp"
#include "combiseg/histogram.hpp"
#include "combiseg/params.hpp"

namespace combiseg {

/// Everything a CLI run can be configured with.
///
/// On disk this is a flat `key = value` file; `#` starts a comment. The
/// parameters are p1..p8, each also accepted under a descriptive alias:
///
///   p1 preprocess_size       p5 separator_dilation
///   p2 text_dilation         p6 min_line_height
///   p3 protection_height     p7 peak_threshold
///   p4 separator_width       p8 height_adjustment
///
/// plus text_is_dark, overlap_merge (true/false), noise_floor and theta.
struct Config {
  Params params;
  bool text_is_dark = true;
  bool overlap_merge = true;
  double noise_floor = kDefaultNoiseFloor;
  double theta = kDefaultTheta;

  /// Params rules, plus noise_floor in [0, 1) and theta > 0.
  void validate() const;

  bool operator==(const Config&) const = default;
};

/// Unknown keys, malformed values and duplicate assignments are errors
/// (std::runtime_error, with the line number). Missing keys keep defaults.
Config parse_config(std::istream& in);
Config read_config(const std::filesystem::path& path);

void write_config(const Config& config, std::ostream& out);
void write_config(const Config& config, const std::filesystem::path& path);

}  // namespace combiseg
