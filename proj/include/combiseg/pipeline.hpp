#pragma once

#include <span>
#include <vector>

#include "combiseg/bbox.hpp"
#include "combiseg/histogram.hpp"
#include "combiseg/image.hpp"
#include "combiseg/morphology.hpp"
#include "combiseg/params.hpp"

namespace combiseg {

struct SegmentOptions {
  /// Merge vertically overlapping boxes after padding (see overlap_merge).
  bool overlap_merge = true;
  /// Run the projection split stage. Disabled while tuning the morphology
  /// parameters, which are judged on components alone.
  bool histogram = true;
  double noise_floor = kDefaultNoiseFloor;
  MorphEngine engine = MorphEngine::SlidingWindow;
};

/// Line boxes in reading order. Never empty for a non-empty image.
struct SegmentationResult {
  int width = 0;
  int height = 0;
  std::vector<BBox> boxes;
};

/// Segments a binarized single-column text block into line boxes.
/// Throws std::invalid_argument for an empty image or invalid params.
SegmentationResult combiseg(const BinaryImage& ib, const Params& params,
                            const SegmentOptions& options = {});

/// True when a and b (with a.y_min <= b.y_min) overlap vertically by more
/// than 75% of either box's y_max - y_min, or by more than half of
/// b.y_max - a.y_min. A zero denominator counts as exceeded iff the overlap
/// is positive.
bool should_merge(const BBox& a, const BBox& b);

/// Repeatedly unites successive boxes (in reading order) for which
/// should_merge holds, until no pair qualifies. Output is in reading order.
std::vector<BBox> overlap_merge(std::vector<BBox> boxes);

/// Drops every box contained in another one (keeping a single copy of
/// duplicates). Order of the survivors is preserved.
std::vector<BBox> remove_contained(std::vector<BBox> boxes);

/// Final pass: sort, pad vertically by `pad` (clamped to the image), drop
/// contained boxes, optionally merge overlaps, and sort again.
SegmentationResult adjust(std::span<const BBox> boxes, int pad, int width, int height,
                          bool merge_overlaps = true);

}  // namespace combiseg
