#pragma once

#include <span>
#include <vector>

#include "combiseg/bbox.hpp"
#include "combiseg/image.hpp"
#include "combiseg/params.hpp"

namespace combiseg {

/// Relative count below which the peak search stops, as a fraction of the
/// highest count in the sub-projection.
inline constexpr double kDefaultNoiseFloor = 0.1;

/// Text pixels per row of `ib`.
std::vector<int> global_projection(const BinaryImage& ib);

/// Row counts restricted to [y_min, y_max], iterable from the highest count
/// down (equal counts by ascending y).
class SubProjection {
 public:
  SubProjection(std::span<const int> projection, int y_min, int y_max);

  int y_min() const { return y_min_; }
  int y_max() const { return y_min_ + static_cast<int>(counts_.size()) - 1; }
  std::size_t size() const { return counts_.size(); }
  bool contains(int y) const { return y >= y_min_ && y <= y_max(); }

  /// Count at absolute row y; y must lie in [y_min, y_max].
  int operator[](int y) const { return counts_[static_cast<std::size_t>(y - y_min_)]; }

  /// Rows ordered by decreasing count, ties by ascending y.
  std::span<const int> order() const { return order_; }

  int max_count() const { return counts_[static_cast<std::size_t>(order_.front() - y_min_)]; }

 private:
  int y_min_;
  std::vector<int> counts_;
  std::vector<int> order_;
};

/// Projection values of `projection` over the rows of `box`.
SubProjection subproj(std::span<const int> projection, const BBox& box);

struct PeakBounds {
  int start = 0;
  int end = 0;
  bool operator==(const PeakBounds&) const = default;
};

/// Maximal run of rows around `coord` whose counts are all >= alpha. Runs
/// stop at the ends of the sub-projection. Throws std::logic_error when
/// `coord` is outside the range or its own count is below alpha.
PeakBounds bounds(const SubProjection& hi, int coord, double alpha);

/// Valley rows between successive peaks. `peaks` holds start/end pairs.
/// Fewer than two peaks (size < 4) yields no splits.
std::vector<int> valleys(const SubProjection& hi, std::vector<int> peaks);

/// Scans rows from the highest count down, registering a peak for each new
/// row whose run (at threshold * count) is disjoint from every run seen so
/// far. Stops once counts drop below noise_floor * max. Returns the valleys
/// between the registered peaks, ascending.
std::vector<int> analysis(const SubProjection& hi, double threshold,
                          double noise_floor = kDefaultNoiseFloor);

/// Cuts `box` at the given rows (ascending, inside the box). A piece from the
/// previous cut to s is kept only if s - previous >= min_height.
std::vector<BBox> split(std::vector<int> splits, const BBox& box, int min_height);

/// Splits each candidate box along the valleys of its row projection in `ib`.
std::vector<BBox> hist(const BinaryImage& ib, std::span<const BBox> boxes, const Params& params,
                       double noise_floor = kDefaultNoiseFloor);

}  // namespace combiseg
