#include "combiseg/components.hpp"

#include <stdexcept>

namespace combiseg {

namespace {

// Union by smaller root, so a root is always the first provisional label of
// its set in raster order.
class DisjointSets {
 public:
  std::int32_t make() {
    parent_.push_back(static_cast<std::int32_t>(parent_.size()));
    return parent_.back();
  }

  std::int32_t find(std::int32_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  void join(std::int32_t a, std::int32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a < b)
      parent_[b] = a;
    else
      parent_[a] = b;
  }

  std::size_t size() const { return parent_.size(); }

 private:
  std::vector<std::int32_t> parent_;
};

}  // namespace

Labeling label_components(const BinaryImage& img) {
  Labeling out;
  out.width = img.width();
  out.height = img.height();
  out.labels.assign(img.size(), -1);
  const int w = img.width();

  DisjointSets sets;
  for (int y = 0; y < img.height(); ++y) {
    const auto row = img.row(y);
    std::int32_t* lab = out.labels.data() + static_cast<std::size_t>(y) * w;
    const std::int32_t* above = y > 0 ? lab - w : nullptr;
    for (int x = 0; x < w; ++x) {
      if (!row[x]) continue;
      const std::int32_t west = x > 0 ? lab[x - 1] : -1;
      const std::int32_t north = above ? above[x] : -1;
      if (west >= 0 && north >= 0) {
        lab[x] = west;
        sets.join(west, north);
      } else if (west >= 0) {
        lab[x] = west;
      } else if (north >= 0) {
        lab[x] = north;
      } else {
        lab[x] = sets.make();
      }
    }
  }

  // Roots appear in increasing order, which is first-pixel raster order.
  std::vector<std::int32_t> final_label(sets.size(), 0);
  for (std::size_t i = 0; i < sets.size(); ++i) {
    const auto root = sets.find(static_cast<std::int32_t>(i));
    if (root == static_cast<std::int32_t>(i)) final_label[i] = ++out.count;
  }
  for (auto& l : out.labels) l = l < 0 ? 0 : final_label[sets.find(l)];
  return out;
}

std::vector<std::vector<Pixel>> component_pixels(const Labeling& labeling) {
  std::vector<std::vector<Pixel>> out(static_cast<std::size_t>(labeling.count));
  for (int y = 0; y < labeling.height; ++y)
    for (int x = 0; x < labeling.width; ++x)
      if (auto l = labeling.at(y, x)) out[l - 1].push_back({y, x});
  return out;
}

std::vector<BBox> component_boxes(const Labeling& labeling) {
  std::vector<BBox> boxes(static_cast<std::size_t>(labeling.count),
                          BBox{labeling.width, labeling.height, -1, -1});
  for (int y = 0; y < labeling.height; ++y) {
    for (int x = 0; x < labeling.width; ++x) {
      const auto l = labeling.at(y, x);
      if (!l) continue;
      BBox& b = boxes[l - 1];
      b.x_min = std::min(b.x_min, x);
      b.y_min = std::min(b.y_min, y);
      b.x_max = std::max(b.x_max, x);
      b.y_max = std::max(b.y_max, y);
    }
  }
  return boxes;
}

std::vector<BBox> comp(const BinaryImage& ip, int min_height) {
  if (ip.empty()) throw std::invalid_argument("comp: empty image");
  std::vector<BBox> boxes;
  for (const BBox& b : component_boxes(label_components(ip)))
    if (b.span() >= min_height) boxes.push_back(b);
  if (boxes.empty()) boxes.push_back({0, 0, ip.width() - 1, ip.height() - 1});
  return boxes;
}

}  // namespace combiseg
