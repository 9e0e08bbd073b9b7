#include "cli.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"

#include "combiseg/config.hpp"
#include "combiseg/evaluation.hpp"
#include "combiseg/imgio.hpp"
#include "combiseg/pipeline.hpp"
#include "combiseg/synthetic.hpp"

namespace combiseg::cli {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

// Flags shared by every command that runs the segmenter.
struct Common {
  std::string params_file;
  bool dark_text = false;
  bool light_text = false;
  bool no_merge_rules = false;
  std::optional<double> theta;
  bool json = false;
  unsigned workers = 0;

  void add_to(CLI::App& app, bool with_theta, bool with_workers) {
    app.add_option("--params", params_file, "Configuration file (key = value)");
    auto* dark = app.add_flag("--dark-text", dark_text, "Text is darker than the background (default)");
    auto* light = app.add_flag("--light-text", light_text, "Text is lighter than the background");
    dark->excludes(light);
    app.add_flag("--no-merge-rules", no_merge_rules, "Disable the overlap merge rules");
    app.add_flag("--json", json, "Machine-readable output");
    if (with_theta)
      app.add_option("--theta", theta, "Match tolerance in pixels (default 14.3)")
          ->check(CLI::PositiveNumber);
    if (with_workers)
      app.add_option("--workers", workers, "Worker threads (default: all cores)")
          ->check(CLI::NonNegativeNumber);
  }

  Config config() const {
    Config c = params_file.empty() ? Config{} : read_config(params_file);
    if (dark_text) c.text_is_dark = true;
    if (light_text) c.text_is_dark = false;
    if (no_merge_rules) c.overlap_merge = false;
    if (theta) c.theta = *theta;
    c.validate();
    return c;
  }
};

SegmentOptions segment_options(const Config& c) {
  SegmentOptions o;
  o.overlap_merge = c.overlap_merge;
  o.noise_floor = c.noise_floor;
  return o;
}

EvalOptions eval_options(const Config& c, unsigned workers) {
  EvalOptions o;
  o.theta = c.theta;
  o.text_is_dark = c.text_is_dark;
  o.workers = workers;
  o.segment = segment_options(c);
  return o;
}

json boxes_json(std::span<const BBox> boxes) {
  json arr = json::array();
  for (const BBox& b : boxes) arr.push_back({b.x_min, b.y_min, b.x_max, b.y_max});
  return arr;
}

std::string fixed(double v, int digits = 3) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(digits) << v;
  return s.str();
}

template <class Fn>
void parallel_for(std::size_t jobs, unsigned workers, Fn&& fn) {
  unsigned n = workers ? workers : std::max(1u, std::thread::hardware_concurrency());
  n = static_cast<unsigned>(std::min<std::size_t>(n, std::max<std::size_t>(jobs, 1)));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < n; ++t)
      pool.emplace_back([&] {
        for (std::size_t i; (i = next.fetch_add(1)) < jobs;) {
          try {
            fn(i);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
            next = jobs;
          }
        }
      });
  }
  if (failure) std::rethrow_exception(failure);
}

// ------------------------------------------------------------------ segment

struct SegmentArgs {
  Common common;
  std::vector<std::string> images;
  std::string overlay;
};

int cmd_segment(const SegmentArgs& a, std::ostream& out) {
  const Config c = a.common.config();
  if (!a.overlay.empty() && a.images.size() != 1)
    throw std::invalid_argument("--overlay needs exactly one input image");
  for (const std::string& path : a.images) {
    const GrayImage gray = load(path);
    const SegmentationResult r =
        combiseg(otsu_binarize(gray, c.text_is_dark), c.params, segment_options(c));
    if (!a.overlay.empty()) render_overlay(gray, r.boxes, a.overlay);
    if (a.common.json) {
      json doc;
      doc["image"] = path;
      doc["width"] = r.width;
      doc["height"] = r.height;
      doc["boxes"] = boxes_json(r.boxes);
      out << doc.dump() << '\n';
    } else {
      out << path << ": " << r.boxes.size() << " lines (" << r.width << "x" << r.height << ")\n";
      for (const BBox& b : r.boxes)
        out << "  " << b.x_min << ' ' << b.y_min << ' ' << b.x_max << ' ' << b.y_max << '\n';
    }
  }
  return 0;
}

// --------------------------------------------------------------------- eval

struct EvalArgs {
  Common common;
  std::string manifest;
  std::string csv;
  bool one_to_one = false;
  bool with_binarization = false;
};

int cmd_eval(const EvalArgs& a, std::ostream& out) {
  const Config c = a.common.config();
  const auto samples = load_manifest(a.manifest);
  const auto inputs = load_inputs(samples, c.text_is_dark);
  EvalOptions opts = eval_options(c, a.common.workers);
  opts.one_to_one = a.one_to_one;
  opts.time_binarization = a.with_binarization;
  const EvalReport r = evaluate(inputs, c.params, opts);

  if (!a.csv.empty()) {
    std::ofstream f(a.csv);
    if (!f) throw std::runtime_error("cannot write " + a.csv);
    write_csv(r, f);
  }
  if (a.common.json) {
    json doc;
    doc["samples"] = json::array();
    for (const SampleResult& s : r.samples)
      doc["samples"].push_back({{"image", s.name},
                                {"gt_lines", s.gt_lines},
                                {"predicted", s.predicted},
                                {"matched", s.matched},
                                {"loss", s.loss},
                                {"ms", s.ms}});
    doc["total_lines"] = r.total_lines;
    doc["total_loss"] = r.total_loss;
    doc["accuracy"] = r.accuracy;
    doc["ms_per_image"] = r.ms_per_image;
    out << doc.dump(2) << '\n';
    return 0;
  }
  out << std::left << std::setw(40) << "image" << std::right << std::setw(6) << "gt"
      << std::setw(6) << "pred" << std::setw(8) << "matched" << std::setw(6) << "loss"
      << std::setw(10) << "ms" << '\n';
  for (const SampleResult& s : r.samples)
    out << std::left << std::setw(40) << fs::path(s.name).filename().string() << std::right
        << std::setw(6) << s.gt_lines << std::setw(6) << s.predicted << std::setw(8) << s.matched
        << std::setw(6) << s.loss << std::setw(10) << fixed(s.ms) << '\n';
  out << "images    " << r.samples.size() << '\n'
      << "lines     " << r.total_lines << '\n'
      << "loss      " << r.total_loss << '\n'
      << "accuracy  " << fixed(r.accuracy) << '\n'
      << "pt        " << fixed(r.ms_per_image) << " ms/image\n";
  return 0;
}

// -------------------------------------------------------------------- bench

struct BenchArgs {
  Common common;
  std::vector<std::string> images;
  int synthetic = 0;
  int reps = 3;
  bool with_binarization = false;
};

int cmd_bench(const BenchArgs& a, std::ostream& out) {
  if (a.reps < 1) throw std::invalid_argument("--reps must be at least 1");
  if (a.images.empty() == (a.synthetic == 0))
    throw std::invalid_argument("give either image paths or --synthetic N");
  const Config c = a.common.config();
  const SegmentOptions seg = segment_options(c);

  std::vector<GrayImage> grays;
  if (a.synthetic > 0) {
    for (int i = 0; i < a.synthetic; ++i)
      grays.push_back(to_gray(generate_synthetic(bench_block_spec(i + 1)).image));
  } else {
    for (const std::string& p : a.images) grays.push_back(load(p));
  }
  std::vector<BinaryImage> binaries;
  for (const GrayImage& g : grays) binaries.push_back(otsu_binarize(g, c.text_is_dark));

  auto run_one = [&](std::size_t i) {
    if (a.with_binarization)
      return combiseg(otsu_binarize(grays[i], c.text_is_dark), c.params, seg).boxes.size();
    return combiseg(binaries[i], c.params, seg).boxes.size();
  };

  parallel_for(grays.size(), a.common.workers, [&](std::size_t i) { run_one(i); });  // warm-up

  const std::size_t n = grays.size();
  std::vector<double> ms(n * static_cast<std::size_t>(a.reps));
  parallel_for(ms.size(), a.common.workers, [&](std::size_t job) {
    const auto start = std::chrono::steady_clock::now();
    run_one(job % n);
    ms[job] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
                  .count();
  });

  std::vector<double> sorted = ms;
  std::sort(sorted.begin(), sorted.end());
  double sum = 0.0;
  for (double v : ms) sum += v;
  const double mean = sum / static_cast<double>(ms.size());
  const std::size_t m = sorted.size();
  const double median = m % 2 ? sorted[m / 2] : (sorted[m / 2 - 1] + sorted[m / 2]) / 2.0;
  const auto rank = static_cast<std::size_t>(std::ceil(0.95 * static_cast<double>(m)));
  const double p95 = sorted[std::max<std::size_t>(rank, 1) - 1];

  if (a.common.json) {
    json doc{{"images", n},    {"reps", a.reps},     {"samples", m},
             {"mean_ms", mean}, {"median_ms", median}, {"p95_ms", p95}};
    out << doc.dump(2) << '\n';
  } else {
    out << "images   " << n << '\n'
        << "reps     " << a.reps << '\n'
        << "samples  " << m << '\n'
        << "mean     " << fixed(mean) << " ms/image\n"
        << "median   " << fixed(median) << " ms/image\n"
        << "p95      " << fixed(p95) << " ms/image\n";
  }
  return 0;
}

// -------------------------------------------------------------------- sweep

struct SweepArgs {
  Common common;
  std::string manifest;
  std::string grid;
  std::string out;
};

SweepGrid parse_grid(const std::string& text) {
  json doc;
  try {
    if (!text.empty() && text.front() == '{') {
      doc = json::parse(text);
    } else {
      std::ifstream f(text);
      if (!f) throw std::runtime_error("cannot open grid " + text);
      doc = json::parse(f);
    }
  } catch (const json::parse_error& e) {
    throw std::runtime_error(std::string("grid: ") + e.what());
  }
  if (!doc.is_object()) throw std::runtime_error("grid: expected a JSON object");
  if (doc.empty()) throw std::runtime_error("grid: empty grid");

  static const std::map<std::string, std::string> names{
      {"text_dilation", "p2"},   {"protection_height", "p3"}, {"separator_width", "p4"},
      {"separator_dilation", "p5"}, {"peak_threshold", "p7"}};
  SweepGrid g;
  std::set<std::string> seen;
  for (const auto& [raw_key, value] : doc.items()) {
    const auto alias = names.find(raw_key);
    const std::string key = alias == names.end() ? raw_key : alias->second;
    if (!seen.insert(key).second) throw std::runtime_error("grid: '" + key + "' given twice");
    if (!value.is_array() || value.empty())
      throw std::runtime_error("grid: '" + raw_key + "' needs a non-empty list");
    try {
      if (key == "p2") g.text_dilation = value.get<std::vector<int>>();
      else if (key == "p3") g.protection_height = value.get<std::vector<int>>();
      else if (key == "p4") g.separator_width = value.get<std::vector<int>>();
      else if (key == "p5") g.separator_dilation = value.get<std::vector<int>>();
      else if (key == "p7") g.peak_threshold = value.get<std::vector<double>>();
      else throw std::runtime_error("grid: unknown key '" + raw_key + "'");
    } catch (const json::exception& e) {
      throw std::runtime_error("grid: bad values for '" + raw_key + "'");
    }
  }
  return g;
}

int cmd_sweep(const SweepArgs& a, std::ostream& out) {
  Config c = a.common.config();
  const SweepGrid grid = parse_grid(a.grid);
  const auto samples = load_manifest(a.manifest);
  const auto inputs = load_inputs(samples, c.text_is_dark);
  const SweepResult r = sweep(c.params, grid, inputs, eval_options(c, a.common.workers));
  c.params = r.best;
  write_config(c, fs::path(a.out));

  auto row_json = [](const SweepRow& row) {
    const Params& p = row.params;
    return json{{"p2", p.text_dilation},     {"p3", p.protection_height},
                {"p4", p.separator_width},   {"p5", p.separator_dilation},
                {"p7", p.peak_threshold},    {"accuracy", row.accuracy},
                {"ms_per_image", row.ms_per_image}};
  };
  if (a.common.json) {
    json doc;
    doc["morphology"] = json::array();
    for (const SweepRow& row : r.morphology) doc["morphology"].push_back(row_json(row));
    doc["threshold"] = json::array();
    for (const SweepRow& row : r.threshold) doc["threshold"].push_back(row_json(row));
    doc["skipped"] = r.skipped;
    doc["best"] = row_json({r.best, 0.0, 0.0});
    doc["best"].erase("accuracy");
    doc["best"].erase("ms_per_image");
    doc["config"] = a.out;
    out << doc.dump(2) << '\n';
    return 0;
  }
  out << "morphology (component boxes only)\n"
      << std::setw(6) << "p2" << std::setw(6) << "p3" << std::setw(6) << "p4" << std::setw(6)
      << "p5" << std::setw(10) << "accuracy" << std::setw(10) << "ms" << '\n';
  for (const SweepRow& row : r.morphology)
    out << std::setw(6) << row.params.text_dilation << std::setw(6) << row.params.protection_height
        << std::setw(6) << row.params.separator_width << std::setw(6)
        << row.params.separator_dilation << std::setw(10) << fixed(row.accuracy) << std::setw(10)
        << fixed(row.ms_per_image) << '\n';
  if (!r.threshold.empty()) {
    out << "peak threshold (full pipeline)\n"
        << std::setw(6) << "p7" << std::setw(10) << "accuracy" << std::setw(10) << "ms" << '\n';
    for (const SweepRow& row : r.threshold)
      out << std::setw(6) << row.params.peak_threshold << std::setw(10) << fixed(row.accuracy)
          << std::setw(10) << fixed(row.ms_per_image) << '\n';
  }
  if (r.skipped) out << "skipped " << r.skipped << " invalid combinations\n";
  out << "best p2=" << r.best.text_dilation << " p3=" << r.best.protection_height
      << " p4=" << r.best.separator_width << " p5=" << r.best.separator_dilation
      << " p7=" << r.best.peak_threshold << " -> " << a.out << '\n';
  return 0;
}

// ----------------------------------------------------------------- generate

struct GenerateArgs {
  std::string dir;
  int count = 20;
  std::uint64_t seed = 1;
  bool wide_gaps = false;
  bool bench_blocks = false;
};

int cmd_generate(const GenerateArgs& a, std::ostream& out) {
  if (a.count < 1) throw std::invalid_argument("--count must be at least 1");
  fs::create_directories(a.dir);
  std::vector<std::string> entries;
  for (int i = 0; i < a.count; ++i) {
    const std::uint64_t seed = a.seed + static_cast<std::uint64_t>(i);
    const SyntheticSpec spec = a.bench_blocks ? bench_block_spec(seed) : random_spec(seed, a.wide_gaps);
    const SyntheticBlock block = generate_synthetic(spec);
    std::ostringstream stem;
    stem << "block_" << std::setw(4) << std::setfill('0') << i;
    const std::string png = stem.str() + ".png";
    save_png(block.image, fs::path(a.dir) / png);
    save_sample(fs::path(a.dir) / (stem.str() + ".json"), png, block.gt);
    entries.push_back(stem.str() + ".json");
  }
  save_manifest(fs::path(a.dir) / "manifest.json", entries);
  out << "wrote " << a.count << " blocks and " << (fs::path(a.dir) / "manifest.json").string()
      << '\n';
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Text line segmentation for binarized text blocks", "combiseg"};
  app.require_subcommand(1);

  SegmentArgs seg;
  auto* segment = app.add_subcommand("segment", "Segment images into line boxes");
  seg.common.add_to(*segment, false, false);
  segment->add_option("images", seg.images, "PNG images")->required();
  segment->add_option("--overlay", seg.overlay, "Write a PNG with the boxes drawn in red");

  EvalArgs ev;
  auto* eval = app.add_subcommand("eval", "Score the segmenter against ground truth");
  ev.common.add_to(*eval, true, true);
  eval->add_option("manifest", ev.manifest, "Ground-truth manifest (JSON)")->required();
  eval->add_option("--csv", ev.csv, "Write per-image results as CSV");
  eval->add_flag("--one-to-one", ev.one_to_one, "Match each box at most once");
  eval->add_flag("--with-binarization", ev.with_binarization, "Include binarization in the timing");

  BenchArgs be;
  auto* bench = app.add_subcommand("bench", "Time the segmenter");
  be.common.add_to(*bench, false, true);
  bench->add_option("images", be.images, "PNG images");
  bench->add_option("--synthetic", be.synthetic, "Use N generated 1000x400 blocks instead")
      ->check(CLI::NonNegativeNumber);
  bench->add_option("--reps", be.reps, "Timed repetitions per image (default 3)");
  bench->add_flag("--with-binarization", be.with_binarization, "Include binarization in the timing");

  SweepArgs sw;
  auto* sweep_cmd = app.add_subcommand("sweep", "Brute-force parameters on a ground-truth set");
  sw.common.add_to(*sweep_cmd, true, true);
  sweep_cmd->add_option("manifest", sw.manifest, "Ground-truth manifest (JSON)")->required();
  sweep_cmd->add_option("--grid", sw.grid, "Grid file or inline JSON")->required();
  sweep_cmd->add_option("--out", sw.out, "Where to write the winning configuration")->required();

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "Write a synthetic corpus with ground truth");
  generate->add_option("dir", gen.dir, "Output directory")->required();
  generate->add_option("--count", gen.count, "Number of blocks (default 20)");
  generate->add_option("--seed", gen.seed, "First seed (default 1)");
  generate->add_flag("--wide-gaps", gen.wide_gaps, "Let line gaps exceed two thirds of the line height");
  generate->add_flag("--bench-blocks", gen.bench_blocks, "Fixed 1000x400 blocks");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (segment->parsed()) return cmd_segment(seg, out);
    if (eval->parsed()) return cmd_eval(ev, out);
    if (bench->parsed()) return cmd_bench(be, out);
    if (sweep_cmd->parsed()) return cmd_sweep(sw, out);
    if (generate->parsed()) return cmd_generate(gen, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}

}  // namespace combiseg::cli
