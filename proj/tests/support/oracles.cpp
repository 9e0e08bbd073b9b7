#include "oracles.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <stdexcept>
#include <utility>

namespace oracle {

BinaryImage dilate(const BinaryImage& img, StructuringElement e) {
  BinaryImage out(img.width(), img.height());
  for (int y = 0; y < img.height(); ++y)
    for (int x = 0; x < img.width(); ++x) {
      if (!img(y, x)) continue;
      for (int j = 0; j < e.height; ++j)
        for (int i = 0; i < e.width; ++i) {
          const int ty = y + j - e.anchor_y();
          const int tx = x + i - e.anchor_x();
          if (ty >= 0 && ty < img.height() && tx >= 0 && tx < img.width()) out.set(ty, tx, true);
        }
    }
  return out;
}

BinaryImage erode(const BinaryImage& img, StructuringElement e) {
  BinaryImage out(img.width(), img.height());
  for (int y = 0; y < img.height(); ++y)
    for (int x = 0; x < img.width(); ++x) {
      bool fits = true;
      for (int j = 0; j < e.height && fits; ++j)
        for (int i = 0; i < e.width && fits; ++i) {
          const int sy = y + j - e.anchor_y();
          const int sx = x + i - e.anchor_x();
          const bool inside = sy >= 0 && sy < img.height() && sx >= 0 && sx < img.width();
          if (inside && !img(sy, sx)) fits = false;
        }
      out.set(y, x, fits);
    }
  return out;
}

BinaryImage open(const BinaryImage& img, StructuringElement e) { return dilate(erode(img, e), e); }

BinaryImage add(const BinaryImage& a, const BinaryImage& b) {
  if (a.width() != b.width() || a.height() != b.height()) throw std::invalid_argument("size");
  BinaryImage out(a.width(), a.height());
  for (int y = 0; y < a.height(); ++y)
    for (int x = 0; x < a.width(); ++x) out.set(y, x, std::min(1, a(y, x) + b(y, x)));
  return out;
}

BinaryImage subtract(const BinaryImage& a, const BinaryImage& b) {
  if (a.width() != b.width() || a.height() != b.height()) throw std::invalid_argument("size");
  BinaryImage out(a.width(), a.height());
  for (int y = 0; y < a.height(); ++y)
    for (int x = 0; x < a.width(); ++x) out.set(y, x, std::max(0, a(y, x) - b(y, x)));
  return out;
}

BinaryImage invert(const BinaryImage& img) {
  BinaryImage out(img.width(), img.height());
  for (int y = 0; y < img.height(); ++y)
    for (int x = 0; x < img.width(); ++x) out.set(y, x, 1 - img(y, x));
  return out;
}

BinaryImage morph(const BinaryImage& ib, const combiseg::Params& p) {
  const StructuringElement tall{1, p.preprocess_size}, wide{p.preprocess_size, 1};
  BinaryImage ip = subtract(ib, add(open(ib, tall), open(ib, wide)));
  ip = invert(dilate(ip, {p.text_dilation, 1}));
  const BinaryImage protect = subtract(ip, open(ip, {1, p.protection_height}));
  const BinaryImage s = dilate(open(protect, {p.separator_width, 1}), {p.separator_dilation, 1});
  return invert(add(ip, s));
}

std::vector<std::vector<combiseg::Pixel>> flood_fill(const BinaryImage& img) {
  std::vector<std::vector<bool>> seen(img.height(), std::vector<bool>(img.width(), false));
  std::vector<std::vector<combiseg::Pixel>> out;
  for (int y = 0; y < img.height(); ++y)
    for (int x = 0; x < img.width(); ++x) {
      if (!img(y, x) || seen[y][x]) continue;
      std::vector<combiseg::Pixel> comp;
      std::deque<std::pair<int, int>> queue{{y, x}};
      seen[y][x] = true;
      while (!queue.empty()) {
        auto [cy, cx] = queue.front();
        queue.pop_front();
        comp.push_back({cy, cx});
        const int dy[] = {-1, 1, 0, 0};
        const int dx[] = {0, 0, -1, 1};
        for (int k = 0; k < 4; ++k) {
          const int ny = cy + dy[k], nx = cx + dx[k];
          if (ny < 0 || ny >= img.height() || nx < 0 || nx >= img.width()) continue;
          if (!img(ny, nx) || seen[ny][nx]) continue;
          seen[ny][nx] = true;
          queue.push_back({ny, nx});
        }
      }
      std::sort(comp.begin(), comp.end(), [](auto a, auto b) {
        return std::pair(a.y, a.x) < std::pair(b.y, b.x);
      });
      out.push_back(std::move(comp));
    }
  return out;
}

namespace {

std::pair<int, int> bounds(const std::map<int, int>& h, int coord, double alpha) {
  int start = coord;
  while (h.count(start - 1) && h.at(start - 1) >= alpha) --start;
  int end = coord;
  while (h.count(end + 1) && h.at(end + 1) >= alpha) ++end;
  return {start, end};
}

}  // namespace

std::vector<int> analysis(const std::map<int, int>& h, double t, double noise_floor) {
  std::vector<std::pair<int, int>> ordered(h.begin(), h.end());
  std::stable_sort(ordered.begin(), ordered.end(),
                   [](auto a, auto b) { return a.second > b.second; });
  int max_h = 0;
  for (auto [y, c] : h) max_h = std::max(max_h, c);

  std::set<int> visited;
  std::vector<int> peaks;
  for (auto [coord, count] : ordered) {
    if (count < noise_floor * max_h) break;
    if (visited.count(coord)) continue;
    const double alpha = t * count;
    const auto [start, end] = bounds(h, coord, alpha);
    bool disjoint = true;
    for (int y = start; y <= end; ++y)
      if (visited.count(y)) disjoint = false;
    if (disjoint) {
      peaks.push_back(start);
      peaks.push_back(end);
    }
    for (int y = start; y <= end; ++y) visited.insert(y);
  }
  return valleys(h, peaks);
}

std::vector<int> valleys(const std::map<int, int>& h, std::vector<int> peaks) {
  if (peaks.size() < 4) return {};
  std::sort(peaks.begin(), peaks.end());
  peaks.erase(peaks.begin());
  peaks.pop_back();
  std::vector<int> out;
  for (std::size_t k = 0; k + 1 < peaks.size(); k += 2) {
    int best = peaks[k];
    for (int y = peaks[k]; y <= peaks[k + 1]; ++y)
      if (h.at(y) < h.at(best)) best = y;
    out.push_back(best);
  }
  std::sort(out.begin(), out.end());
  return out;
}

int uniform(std::mt19937& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

BinaryImage random_image(std::mt19937& rng, int w, int h, double density) {
  std::bernoulli_distribution bit(density);
  BinaryImage img(w, h);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) img.set(y, x, bit(rng));
  return img;
}

BinaryImage random_blocky(std::mt19937& rng, int w, int h) {
  BinaryImage img = random_image(rng, w, h, std::uniform_real_distribution<double>(0.0, 0.15)(rng));
  const int rects = uniform(rng, 0, 6);
  for (int r = 0; r < rects; ++r) {
    const int x0 = uniform(rng, 0, w - 1), y0 = uniform(rng, 0, h - 1);
    img.fill_rect(x0, y0, std::min(w - 1, x0 + uniform(rng, 0, w / 2)),
                  std::min(h - 1, y0 + uniform(rng, 0, h / 3)), uniform(rng, 0, 4) != 0);
  }
  if (uniform(rng, 0, 2) == 0) {
    const int y = uniform(rng, 0, h - 1);
    img.fill_rect(0, y, w - 1, y);
  }
  if (uniform(rng, 0, 2) == 0) {
    const int x = uniform(rng, 0, w - 1);
    img.fill_rect(x, 0, x, h - 1);
  }
  return img;
}

BinaryImage from_ascii(std::initializer_list<std::string_view> rows) {
  const int h = static_cast<int>(rows.size());
  const int w = h ? static_cast<int>(rows.begin()->size()) : 0;
  BinaryImage img(w, h);
  int y = 0;
  for (std::string_view r : rows) {
    if (static_cast<int>(r.size()) != w) throw std::invalid_argument("ragged ascii image");
    for (int x = 0; x < w; ++x) img.set(y, x, r[x] == '#');
    ++y;
  }
  return img;
}

std::vector<int> random_projection(std::mt19937& rng, int n) {
  std::vector<int> v(static_cast<std::size_t>(n), 0);
  const int bumps = uniform(rng, 0, 5);
  for (int b = 0; b < bumps; ++b) {
    const int c = uniform(rng, 0, n - 1), w = uniform(rng, 1, 20);
    const int height = uniform(rng, 1, 50);
    for (int y = std::max(0, c - w); y <= std::min(n - 1, c + w); ++y) v[y] += height;
  }
  const int noise = uniform(rng, 0, 4);
  for (int& x : v) x += uniform(rng, 0, noise);
  if (uniform(rng, 0, 3) == 0)
    for (int& x : v) x = x / 5 * 5;
  return v;
}

}  // namespace oracle
