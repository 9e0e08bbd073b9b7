#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "combiseg/bbox.hpp"
#include "combiseg/image.hpp"
#include "combiseg/params.hpp"
#include "combiseg/pipeline.hpp"

namespace combiseg {

/// Default match tolerance: a third of the average ground-truth line height.
inline constexpr double kDefaultTheta = 14.3;

// ---------------------------------------------------------------- metrics

/// Indices (ascending) of the ground-truth boxes whose middle row lies within
/// theta of some prediction's middle row. One prediction may match several
/// ground-truth boxes; with one_to_one set, pairs are instead claimed
/// greedily by increasing distance and each box is used at most once.
std::vector<std::size_t> matched(std::span<const BBox> pred, std::span<const BBox> gt,
                                 double theta, bool one_to_one = false);

/// min(|gt|, |gt| - matched + max(0, |pred| - |gt|))
int loss_from_counts(int gt_lines, int matched_lines, int predicted_lines);

int loss(std::span<const BBox> pred, std::span<const BBox> gt, double theta,
         bool one_to_one = false);

/// 1 - total_loss / total_lines. Throws std::invalid_argument if there are
/// no lines.
double accuracy_from_totals(long long total_loss, long long total_lines);

/// Mean processing time per image. Throws std::invalid_argument for zero
/// images.
double mean_ms_per_image(double total_ms, std::size_t images);

// ----------------------------------------------------------- ground truth

struct GroundTruthSample {
  std::filesystem::path image;  // resolved against the sample file's directory
  std::vector<BBox> gt;
};

/// Sample file: {"image": "<path>", "boxes": [[x0, y0, x1, y1], ...]}.
GroundTruthSample load_sample(const std::filesystem::path& path);
void save_sample(const std::filesystem::path& path, const std::string& image,
                 std::span<const BBox> boxes);

/// Manifest: {"samples": ["<sample file>", ...]}, paths relative to the
/// manifest. Every malformed entry is reported in one std::runtime_error.
std::vector<GroundTruthSample> load_manifest(const std::filesystem::path& path);
void save_manifest(const std::filesystem::path& path, std::span<const std::string> samples);

// -------------------------------------------------------------- evaluation

/// One block ready for segmentation. `gray` is only needed when timing
/// includes binarization.
struct EvalInput {
  std::string name;
  BinaryImage binary;
  std::optional<GrayImage> gray;
  std::vector<BBox> gt;
};

/// Loads and binarizes every sample; fails if any ground truth is empty or
/// leaves its image.
std::vector<EvalInput> load_inputs(std::span<const GroundTruthSample> samples,
                                   bool text_is_dark = true);

struct EvalOptions {
  double theta = kDefaultTheta;
  bool one_to_one = false;
  bool text_is_dark = true;
  /// Include Otsu binarization in the timed region (needs EvalInput::gray).
  bool time_binarization = false;
  /// 0 = hardware concurrency.
  unsigned workers = 0;
  SegmentOptions segment;
};

struct SampleResult {
  std::string name;
  int gt_lines = 0;
  int predicted = 0;
  int matched = 0;
  int loss = 0;
  double ms = 0.0;
};

struct EvalReport {
  std::vector<SampleResult> samples;
  long long total_loss = 0;
  long long total_lines = 0;
  long long total_predicted = 0;
  double accuracy = 0.0;
  double total_ms = 0.0;
  double ms_per_image = 0.0;
};

/// Segments every input and scores it. Times only the segmentation (and,
/// optionally, binarization); file decoding is excluded.
EvalReport evaluate(std::span<const EvalInput> inputs, const Params& params,
                    const EvalOptions& options = {});

/// One row per sample plus a TOTAL row.
void write_csv(const EvalReport& report, std::ostream& out);

// ------------------------------------------------------------------- sweep

/// Offsets tried around the base value of p2..p5, and absolute p7 values
/// scanned afterwards (empty: keep the base p7).
struct SweepGrid {
  std::vector<int> text_dilation{0};
  std::vector<int> protection_height{0};
  std::vector<int> separator_width{0};
  std::vector<int> separator_dilation{0};
  std::vector<double> peak_threshold;
};

struct SweepRow {
  Params params;
  double accuracy = 0.0;
  double ms_per_image = 0.0;
};

struct SweepResult {
  std::vector<SweepRow> morphology;  // ranked; evaluated without the split stage
  std::vector<SweepRow> threshold;   // ranked; full pipeline, best morphology fixed
  Params best;
  std::size_t skipped = 0;           // grid points with invalid parameters
};

/// Brute-forces the morphology parameters on component boxes alone, then
/// scans p7 with the winner fixed. Rows are ranked by accuracy, then by
/// lower time per image. Throws std::invalid_argument for an empty input set
/// or an empty offset list.
SweepResult sweep(const Params& base, const SweepGrid& grid, std::span<const EvalInput> inputs,
                  const EvalOptions& options = {},
                  const std::function<void(const SweepRow&)>& progress = {});

}  // namespace combiseg
