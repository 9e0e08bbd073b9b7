#include "combiseg/histogram.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

#include "combiseg/simd/kernels.hpp"

namespace combiseg {

std::vector<int> global_projection(const BinaryImage& ib) {
  const auto& k = simd::active();
  std::vector<int> counts(static_cast<std::size_t>(ib.height()));
  for (int y = 0; y < ib.height(); ++y)
    counts[y] = static_cast<int>(k.sum(ib.row(y).data(), ib.row(y).size()));
  return counts;
}

SubProjection::SubProjection(std::span<const int> projection, int y_min, int y_max)
    : y_min_(y_min) {
  if (y_min < 0 || y_max < y_min || y_max >= static_cast<int>(projection.size()))
    throw std::out_of_range("sub-projection rows [" + std::to_string(y_min) + ", " +
                            std::to_string(y_max) + "] outside projection");
  counts_.assign(projection.begin() + y_min, projection.begin() + y_max + 1);
  order_.resize(counts_.size());
  std::iota(order_.begin(), order_.end(), y_min);
  std::stable_sort(order_.begin(), order_.end(),
                   [&](int a, int b) { return (*this)[a] > (*this)[b]; });
}

SubProjection subproj(std::span<const int> projection, const BBox& box) {
  return SubProjection(projection, box.y_min, box.y_max);
}

PeakBounds bounds(const SubProjection& hi, int coord, double alpha) {
  if (!hi.contains(coord) || hi[coord] < alpha)
    throw std::logic_error("bounds: row " + std::to_string(coord) + " is not above threshold");
  PeakBounds b{coord, coord};
  while (b.start > hi.y_min() && hi[b.start - 1] >= alpha) --b.start;
  while (b.end < hi.y_max() && hi[b.end + 1] >= alpha) ++b.end;
  return b;
}

std::vector<int> valleys(const SubProjection& hi, std::vector<int> peaks) {
  if (peaks.size() % 2 != 0) throw std::invalid_argument("valleys: odd number of delimiters");
  std::vector<int> out;
  if (peaks.size() < 4) return out;
  std::sort(peaks.begin(), peaks.end());
  // Drop the outermost delimiters; what remains pairs up as (end_k, start_k+1).
  for (std::size_t i = 1; i + 2 < peaks.size(); i += 2) {
    int best = peaks[i];
    for (int y = peaks[i] + 1; y <= peaks[i + 1]; ++y)
      if (hi[y] < hi[best]) best = y;
    out.push_back(best);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> analysis(const SubProjection& hi, double threshold, double noise_floor) {
  const double floor = noise_floor * hi.max_count();
  std::vector<char> visited(hi.size(), 0);
  auto seen = [&](int y) -> char& { return visited[static_cast<std::size_t>(y - hi.y_min())]; };
  std::vector<int> peaks;

  for (int coord : hi.order()) {
    const int h = hi[coord];
    if (h < floor) break;
    if (seen(coord)) continue;
    const PeakBounds run = bounds(hi, coord, threshold * h);
    bool disjoint = true;
    for (int y = run.start; y <= run.end && disjoint; ++y) disjoint = !seen(y);
    if (disjoint) {
      peaks.push_back(run.start);
      peaks.push_back(run.end);
    }
    for (int y = run.start; y <= run.end; ++y) seen(y) = 1;
  }
  return valleys(hi, std::move(peaks));
}

std::vector<BBox> split(std::vector<int> splits, const BBox& box, int min_height) {
  std::vector<BBox> out;
  splits.push_back(box.y_max);
  std::sort(splits.begin(), splits.end());
  splits.erase(std::unique(splits.begin(), splits.end()), splits.end());
  int last = box.y_min;
  // The list always holds y_max at this point; the pass-through branch is
  // kept to mirror the procedure as published.
  if (!splits.empty()) {
    for (int s : splits) {
      if (s - last >= min_height) out.push_back({box.x_min, last, box.x_max, s});
      last = s;
    }
  } else {
    out.push_back(box);
  }
  return out;
}

std::vector<BBox> hist(const BinaryImage& ib, std::span<const BBox> boxes, const Params& params,
                       double noise_floor) {
  const std::vector<int> projection = global_projection(ib);
  std::vector<BBox> out;
  for (const BBox& box : boxes) {
    const SubProjection hi = subproj(projection, box);
    const auto pieces =
        split(analysis(hi, params.peak_threshold, noise_floor), box, params.min_line_height);
    out.insert(out.end(), pieces.begin(), pieces.end());
  }
  return out;
}

}  // namespace combiseg
