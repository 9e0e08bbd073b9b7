#include "combiseg/evaluation.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "json.hpp"

#include "combiseg/imgio.hpp"

namespace combiseg {

namespace fs = std::filesystem;
using nlohmann::json;

// ---------------------------------------------------------------- metrics

std::vector<std::size_t> matched(std::span<const BBox> pred, std::span<const BBox> gt,
                                 double theta, bool one_to_one) {
  std::vector<std::size_t> out;
  if (!one_to_one) {
    for (std::size_t i = 0; i < gt.size(); ++i) {
      const double mid = gt[i].mid_y();
      if (std::any_of(pred.begin(), pred.end(),
                      [&](const BBox& b) { return std::abs(mid - b.mid_y()) <= theta; }))
        out.push_back(i);
    }
    return out;
  }

  struct Pair {
    double distance;
    std::size_t gt;
    std::size_t pred;
  };
  std::vector<Pair> pairs;
  for (std::size_t i = 0; i < gt.size(); ++i)
    for (std::size_t j = 0; j < pred.size(); ++j)
      if (const double d = std::abs(gt[i].mid_y() - pred[j].mid_y()); d <= theta)
        pairs.push_back({d, i, j});
  std::sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) {
    if (a.distance != b.distance) return a.distance < b.distance;
    if (a.gt != b.gt) return a.gt < b.gt;
    return a.pred < b.pred;
  });
  std::vector<char> gt_used(gt.size(), 0), pred_used(pred.size(), 0);
  for (const Pair& p : pairs) {
    if (gt_used[p.gt] || pred_used[p.pred]) continue;
    gt_used[p.gt] = pred_used[p.pred] = 1;
    out.push_back(p.gt);
  }
  std::sort(out.begin(), out.end());
  return out;
}

int loss_from_counts(int gt_lines, int matched_lines, int predicted_lines) {
  return std::min(gt_lines, gt_lines - matched_lines + std::max(0, predicted_lines - gt_lines));
}

int loss(std::span<const BBox> pred, std::span<const BBox> gt, double theta, bool one_to_one) {
  const auto hits = matched(pred, gt, theta, one_to_one);
  return loss_from_counts(static_cast<int>(gt.size()), static_cast<int>(hits.size()),
                          static_cast<int>(pred.size()));
}

double accuracy_from_totals(long long total_loss, long long total_lines) {
  if (total_lines <= 0) throw std::invalid_argument("accuracy needs at least one line");
  return 1.0 - static_cast<double>(total_loss) / static_cast<double>(total_lines);
}

double mean_ms_per_image(double total_ms, std::size_t images) {
  if (images == 0) throw std::invalid_argument("no images processed");
  return total_ms / static_cast<double>(images);
}

// ----------------------------------------------------------- ground truth

namespace {

json read_json(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::runtime_error(path.string() + ": " + e.what());
  }
}

void write_json(const fs::path& path, const json& doc) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << doc.dump(2) << '\n';
}

BBox parse_box(const json& j) {
  if (!j.is_array() || j.size() != 4 ||
      !std::all_of(j.begin(), j.end(), [](const json& v) { return v.is_number_integer(); }))
    throw std::runtime_error("box must be [x0, y0, x1, y1] integers, got " + j.dump());
  BBox b{j[0].get<int>(), j[1].get<int>(), j[2].get<int>(), j[3].get<int>()};
  if (b.x_min > b.x_max || b.y_min > b.y_max || b.x_min < 0 || b.y_min < 0)
    throw std::runtime_error("degenerate box " + j.dump());
  return b;
}

}  // namespace

GroundTruthSample load_sample(const fs::path& path) {
  const json doc = read_json(path);
  if (!doc.is_object() || !doc.contains("image") || !doc["image"].is_string())
    throw std::runtime_error(path.string() + ": missing string field \"image\"");
  if (!doc.contains("boxes") || !doc["boxes"].is_array())
    throw std::runtime_error(path.string() + ": missing array field \"boxes\"");
  GroundTruthSample s;
  s.image = path.parent_path() / doc["image"].get<std::string>();
  for (const json& b : doc["boxes"]) {
    try {
      s.gt.push_back(parse_box(b));
    } catch (const std::runtime_error& e) {
      throw std::runtime_error(path.string() + ": " + e.what());
    }
  }
  if (s.gt.empty()) throw std::runtime_error(path.string() + ": no ground-truth boxes");
  return s;
}

void save_sample(const fs::path& path, const std::string& image, std::span<const BBox> boxes) {
  json doc{{"image", image}, {"boxes", json::array()}};
  for (const BBox& b : boxes) doc["boxes"].push_back({b.x_min, b.y_min, b.x_max, b.y_max});
  write_json(path, doc);
}

std::vector<GroundTruthSample> load_manifest(const fs::path& path) {
  const json doc = read_json(path);
  if (!doc.is_object() || !doc.contains("samples") || !doc["samples"].is_array())
    throw std::runtime_error(path.string() + ": missing array field \"samples\"");
  if (doc["samples"].empty()) throw std::runtime_error(path.string() + ": manifest is empty");

  std::vector<GroundTruthSample> samples;
  std::vector<std::string> problems;
  std::size_t index = 0;
  for (const json& entry : doc["samples"]) {
    const std::string where = "entry " + std::to_string(index++);
    if (!entry.is_string()) {
      problems.push_back(where + ": not a path string");
      continue;
    }
    try {
      GroundTruthSample s = load_sample(path.parent_path() / entry.get<std::string>());
      if (!fs::is_regular_file(s.image))
        throw std::runtime_error("image not found: " + s.image.string());
      samples.push_back(std::move(s));
    } catch (const std::exception& e) {
      problems.push_back(where + ": " + e.what());
    }
  }
  if (!problems.empty()) {
    std::string msg = path.string() + ": " + std::to_string(problems.size()) + " bad entr" +
                      (problems.size() == 1 ? "y" : "ies");
    for (const auto& p : problems) msg += "\n  " + p;
    throw std::runtime_error(msg);
  }
  return samples;
}

void save_manifest(const fs::path& path, std::span<const std::string> samples) {
  write_json(path, json{{"samples", std::vector<std::string>(samples.begin(), samples.end())}});
}

// -------------------------------------------------------------- evaluation

std::vector<EvalInput> load_inputs(std::span<const GroundTruthSample> samples, bool text_is_dark) {
  std::vector<EvalInput> out;
  out.reserve(samples.size());
  for (const GroundTruthSample& s : samples) {
    GrayImage gray = load(s.image);
    for (const BBox& b : s.gt)
      if (b.x_max >= gray.width() || b.y_max >= gray.height())
        throw std::runtime_error(s.image.string() + ": ground-truth box outside the image");
    BinaryImage binary = otsu_binarize(gray, text_is_dark);
    out.push_back({s.image.string(), std::move(binary), std::move(gray), s.gt});
  }
  return out;
}

namespace {

unsigned worker_count(unsigned requested, std::size_t jobs) {
  unsigned n = requested ? requested : std::max(1u, std::thread::hardware_concurrency());
  return static_cast<unsigned>(std::min<std::size_t>(n, std::max<std::size_t>(jobs, 1)));
}

SampleResult run_one(const EvalInput& in, const Params& params, const EvalOptions& options) {
  using clock = std::chrono::steady_clock;
  const auto start = clock::now();
  SegmentationResult result;
  if (options.time_binarization && in.gray) {
    result = combiseg(otsu_binarize(*in.gray, options.text_is_dark), params, options.segment);
  } else {
    result = combiseg(in.binary, params, options.segment);
  }
  const auto stop = clock::now();

  SampleResult r;
  r.name = in.name;
  r.gt_lines = static_cast<int>(in.gt.size());
  r.predicted = static_cast<int>(result.boxes.size());
  r.matched = static_cast<int>(matched(result.boxes, in.gt, options.theta, options.one_to_one).size());
  r.loss = loss_from_counts(r.gt_lines, r.matched, r.predicted);
  r.ms = std::chrono::duration<double, std::milli>(stop - start).count();
  return r;
}

}  // namespace

EvalReport evaluate(std::span<const EvalInput> inputs, const Params& params,
                    const EvalOptions& options) {
  if (inputs.empty()) throw std::invalid_argument("evaluate: no inputs");
  params.validate();

  EvalReport report;
  report.samples.resize(inputs.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};

  auto work = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < inputs.size() && !failed;) {
      try {
        report.samples[i] = run_one(inputs[i], params, options);
      } catch (...) {
        if (!failed.exchange(true)) failure = std::current_exception();
      }
    }
  };
  const unsigned n = worker_count(options.workers, inputs.size());
  if (n == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < n; ++t) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);

  // Summed in input order, so totals do not depend on scheduling.
  for (const SampleResult& s : report.samples) {
    report.total_loss += s.loss;
    report.total_lines += s.gt_lines;
    report.total_predicted += s.predicted;
    report.total_ms += s.ms;
  }
  report.accuracy = accuracy_from_totals(report.total_loss, report.total_lines);
  report.ms_per_image = mean_ms_per_image(report.total_ms, report.samples.size());
  return report;
}

void write_csv(const EvalReport& report, std::ostream& out) {
  auto quoted = [](const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + '"';
  };
  out << "image,gt_lines,predicted,matched,loss,ms\n";
  out << std::fixed;
  for (const SampleResult& s : report.samples)
    out << quoted(s.name) << ',' << s.gt_lines << ',' << s.predicted << ',' << s.matched << ','
        << s.loss << ',' << std::setprecision(3) << s.ms << '\n';
  out << "TOTAL," << report.total_lines << ',' << report.total_predicted << ','
      << report.total_lines - report.total_loss << ',' << report.total_loss << ','
      << std::setprecision(3) << report.total_ms << '\n';
  out.unsetf(std::ios::fixed);
}

// ------------------------------------------------------------------- sweep

namespace {

void rank(std::vector<SweepRow>& rows) {
  std::stable_sort(rows.begin(), rows.end(), [](const SweepRow& a, const SweepRow& b) {
    if (a.accuracy != b.accuracy) return a.accuracy > b.accuracy;
    return a.ms_per_image < b.ms_per_image;
  });
}

bool valid(const Params& p) {
  try {
    p.validate();
    return true;
  } catch (const std::invalid_argument&) {
    return false;
  }
}

}  // namespace

SweepResult sweep(const Params& base, const SweepGrid& grid, std::span<const EvalInput> inputs,
                  const EvalOptions& options, const std::function<void(const SweepRow&)>& progress) {
  if (inputs.empty()) throw std::invalid_argument("sweep: empty ground-truth set");
  if (grid.text_dilation.empty() || grid.protection_height.empty() ||
      grid.separator_width.empty() || grid.separator_dilation.empty())
    throw std::invalid_argument("sweep: every morphology offset list needs a value");

  SweepResult result;
  auto run = [&](const Params& p, bool histogram, std::vector<SweepRow>& rows) {
    if (!valid(p)) {
      ++result.skipped;
      return;
    }
    EvalOptions opts = options;
    opts.segment.histogram = histogram;
    const EvalReport r = evaluate(inputs, p, opts);
    rows.push_back({p, r.accuracy, r.ms_per_image});
    if (progress) progress(rows.back());
  };

  for (int d2 : grid.text_dilation)
    for (int d3 : grid.protection_height)
      for (int d4 : grid.separator_width)
        for (int d5 : grid.separator_dilation) {
          Params p = base;
          p.text_dilation += d2;
          p.protection_height += d3;
          p.separator_width += d4;
          p.separator_dilation += d5;
          run(p, false, result.morphology);
        }
  if (result.morphology.empty())
    throw std::invalid_argument("sweep: no valid parameter combination in the grid");
  rank(result.morphology);
  result.best = result.morphology.front().params;

  for (double t : grid.peak_threshold) {
    Params p = result.best;
    p.peak_threshold = t;
    run(p, true, result.threshold);
  }
  if (!result.threshold.empty()) {
    rank(result.threshold);
    result.best = result.threshold.front().params;
  }
  return result;
}

}  // namespace combiseg
