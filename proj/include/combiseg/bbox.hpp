#pragma once

#include <algorithm>
#include <compare>
#include <ostream>

namespace combiseg {

/// Axis-aligned box with inclusive pixel corners, laid out as
/// [x_min, y_min, x_max, y_max].
struct BBox {
  int x_min = 0;
  int y_min = 0;
  int x_max = 0;
  int y_max = 0;

  /// y_max - y_min: one less than the number of rows covered.
  int span() const { return y_max - y_min; }
  double mid_y() const { return (y_min + y_max) / 2.0; }

  bool contains(const BBox& o) const {
    return x_min <= o.x_min && y_min <= o.y_min && x_max >= o.x_max && y_max >= o.y_max;
  }

  BBox united(const BBox& o) const {
    return {std::min(x_min, o.x_min), std::min(y_min, o.y_min), std::max(x_max, o.x_max),
            std::max(y_max, o.y_max)};
  }

  bool operator==(const BBox&) const = default;
};

/// Reading order: by y_min, then x_min, then the far corner.
inline bool reading_order(const BBox& a, const BBox& b) {
  if (a.y_min != b.y_min) return a.y_min < b.y_min;
  if (a.x_min != b.x_min) return a.x_min < b.x_min;
  if (a.y_max != b.y_max) return a.y_max < b.y_max;
  return a.x_max < b.x_max;
}

inline BBox clamp(const BBox& b, int width, int height) {
  return {std::clamp(b.x_min, 0, width - 1), std::clamp(b.y_min, 0, height - 1),
          std::clamp(b.x_max, 0, width - 1), std::clamp(b.y_max, 0, height - 1)};
}

inline std::ostream& operator<<(std::ostream& os, const BBox& b) {
  return os << '[' << b.x_min << ", " << b.y_min << ", " << b.x_max << ", " << b.y_max << ']';
}

}  // namespace combiseg
