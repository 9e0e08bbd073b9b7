#include "combiseg/pipeline.hpp"

#include <algorithm>
#include <stdexcept>

#include "combiseg/components.hpp"
#include "combiseg/morph_stage.hpp"

namespace combiseg {

namespace {

bool exceeds(int overlap, int denominator, double ratio) {
  if (denominator == 0) return overlap > 0;
  return static_cast<double>(overlap) / denominator > ratio;
}

}  // namespace

bool should_merge(const BBox& a, const BBox& b) {
  const int overlap = std::max(0, a.y_max - b.y_min);
  return exceeds(overlap, a.span(), 0.75) || exceeds(overlap, b.span(), 0.75) ||
         exceeds(overlap, b.y_max - a.y_min, 0.5);
}

std::vector<BBox> overlap_merge(std::vector<BBox> boxes) {
  std::sort(boxes.begin(), boxes.end(), reading_order);
  bool merged = true;
  while (merged) {
    merged = false;
    for (std::size_t i = 0; i + 1 < boxes.size(); ++i) {
      if (!should_merge(boxes[i], boxes[i + 1])) continue;
      boxes[i] = boxes[i].united(boxes[i + 1]);
      boxes.erase(boxes.begin() + static_cast<std::ptrdiff_t>(i) + 1);
      std::sort(boxes.begin(), boxes.end(), reading_order);
      merged = true;
      break;
    }
  }
  return boxes;
}

std::vector<BBox> remove_contained(std::vector<BBox> boxes) {
  std::vector<BBox> kept;
  for (std::size_t j = 0; j < boxes.size(); ++j) {
    bool inside = false;
    for (std::size_t i = 0; i < boxes.size() && !inside; ++i) {
      if (i == j || !boxes[i].contains(boxes[j])) continue;
      // Of two identical boxes, the earlier one survives.
      inside = !(boxes[i] == boxes[j]) || i < j;
    }
    if (!inside) kept.push_back(boxes[j]);
  }
  return kept;
}

SegmentationResult adjust(std::span<const BBox> boxes, int pad, int width, int height,
                          bool merge_overlaps) {
  SegmentationResult out{width, height, {boxes.begin(), boxes.end()}};
  std::sort(out.boxes.begin(), out.boxes.end(), reading_order);
  for (BBox& b : out.boxes) b = clamp({b.x_min, b.y_min - pad, b.x_max, b.y_max + pad}, width, height);

  // A union of overlapping boxes can swallow a third box, so iterate both
  // rules together until neither changes anything.
  while (true) {
    const std::size_t before = out.boxes.size();
    out.boxes = remove_contained(std::move(out.boxes));
    if (merge_overlaps) out.boxes = overlap_merge(std::move(out.boxes));
    if (out.boxes.size() == before) break;
  }
  std::sort(out.boxes.begin(), out.boxes.end(), reading_order);
  return out;
}

SegmentationResult combiseg(const BinaryImage& ib, const Params& params,
                            const SegmentOptions& options) {
  if (ib.empty()) throw std::invalid_argument("combiseg: empty image");
  params.validate();
  const BinaryImage ip = morph(ib, params, options.engine);
  const std::vector<BBox> boxes = comp(ip, params.min_line_height);
  std::vector<BBox> lines = options.histogram ? hist(ib, boxes, params, options.noise_floor) : boxes;
  // Splitting can discard every piece when blocks are shorter than the
  // minimum line height; fall back to the whole block as for comp.
  if (lines.empty()) lines.push_back({0, 0, ib.width() - 1, ib.height() - 1});
  return adjust(lines, params.height_adjustment, ib.width(), ib.height(), options.overlap_merge);
}

}  // namespace combiseg
