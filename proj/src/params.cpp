#include "combiseg/params.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace combiseg {

namespace {

void require_positive(int value, const char* field) {
  if (value < 1)
    throw std::invalid_argument(std::string(field) + " must be >= 1, got " +
                                std::to_string(value));
}

int scale(int value, double factor, int floor) {
  return std::max(floor, static_cast<int>(std::lround(value * factor)));
}

}  // namespace

void Params::validate() const {
  require_positive(preprocess_size, "p1");
  require_positive(text_dilation, "p2");
  require_positive(protection_height, "p3");
  require_positive(separator_width, "p4");
  require_positive(separator_dilation, "p5");
  require_positive(min_line_height, "p6");
  if (!(peak_threshold > 0.0 && peak_threshold < 1.0))
    throw std::invalid_argument("p7 must lie in (0, 1), got " + std::to_string(peak_threshold));
  if (height_adjustment < 0)
    throw std::invalid_argument("p8 must be >= 0, got " + std::to_string(height_adjustment));
}

Params scaled_params(const Params& base, double line_height) {
  if (!(line_height > 0.0)) throw std::invalid_argument("line height must be positive");
  const double f = line_height / kReferenceLineHeight;
  Params p = base;
  p.preprocess_size = scale(base.preprocess_size, f, 1);
  p.text_dilation = scale(base.text_dilation, f, 1);
  p.protection_height = scale(base.protection_height, f, 1);
  p.separator_width = scale(base.separator_width, f, 1);
  p.separator_dilation = scale(base.separator_dilation, f, 1);
  p.min_line_height = scale(base.min_line_height, f, 1);
  p.height_adjustment = scale(base.height_adjustment, f, 0);
  return p;
}

}  // namespace combiseg
