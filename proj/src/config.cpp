#include "combiseg/config.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace combiseg {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

const std::map<std::string_view, std::string_view>& aliases() {
  static const std::map<std::string_view, std::string_view> m{
      {"preprocess_size", "p1"},   {"text_dilation", "p2"},    {"protection_height", "p3"},
      {"separator_width", "p4"},   {"separator_dilation", "p5"}, {"min_line_height", "p6"},
      {"peak_threshold", "p7"},    {"height_adjustment", "p8"},
  };
  return m;
}

template <class T>
T parse_number(std::string_view text) {
  T value{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw std::invalid_argument("not a number: '" + std::string(text) + "'");
  return value;
}

bool parse_bool(std::string_view text) {
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  throw std::invalid_argument("not a boolean: '" + std::string(text) + "'");
}

void assign(Config& c, std::string_view key, std::string_view value) {
  if (key == "p1") c.params.preprocess_size = parse_number<int>(value);
  else if (key == "p2") c.params.text_dilation = parse_number<int>(value);
  else if (key == "p3") c.params.protection_height = parse_number<int>(value);
  else if (key == "p4") c.params.separator_width = parse_number<int>(value);
  else if (key == "p5") c.params.separator_dilation = parse_number<int>(value);
  else if (key == "p6") c.params.min_line_height = parse_number<int>(value);
  else if (key == "p7") c.params.peak_threshold = parse_number<double>(value);
  else if (key == "p8") c.params.height_adjustment = parse_number<int>(value);
  else if (key == "text_is_dark") c.text_is_dark = parse_bool(value);
  else if (key == "overlap_merge") c.overlap_merge = parse_bool(value);
  else if (key == "noise_floor") c.noise_floor = parse_number<double>(value);
  else if (key == "theta") c.theta = parse_number<double>(value);
  else throw std::invalid_argument("unknown key '" + std::string(key) + "'");
}

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

}  // namespace

void Config::validate() const {
  params.validate();
  if (!(noise_floor >= 0.0 && noise_floor < 1.0))
    throw std::invalid_argument("noise_floor must lie in [0, 1)");
  if (!(theta > 0.0)) throw std::invalid_argument("theta must be positive");
}

Config parse_config(std::istream& in) {
  Config c;
  std::set<std::string> seen;
  std::string line;
  for (int number = 1; std::getline(in, line); ++number) {
    std::string_view text(line);
    if (const auto hash = text.find('#'); hash != std::string_view::npos) text = text.substr(0, hash);
    text = trim(text);
    if (text.empty()) continue;
    const auto eq = text.find('=');
    const auto where = "config line " + std::to_string(number) + ": ";
    if (eq == std::string_view::npos) throw std::runtime_error(where + "expected key = value");
    std::string_view key = trim(text.substr(0, eq));
    const std::string_view value = trim(text.substr(eq + 1));
    if (auto it = aliases().find(key); it != aliases().end()) key = it->second;
    if (!seen.insert(std::string(key)).second)
      throw std::runtime_error(where + "'" + std::string(key) + "' set twice");
    try {
      assign(c, key, value);
    } catch (const std::invalid_argument& e) {
      throw std::runtime_error(where + e.what());
    }
  }
  try {
    c.validate();
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(std::string("config: ") + e.what());
  }
  return c;
}

Config read_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config " + path.string());
  return parse_config(in);
}

void write_config(const Config& c, std::ostream& out) {
  const Params& p = c.params;
  out << "# combiseg configuration\n"
      << "p1 = " << p.preprocess_size << "    # preprocess_size\n"
      << "p2 = " << p.text_dilation << "    # text_dilation\n"
      << "p3 = " << p.protection_height << "    # protection_height\n"
      << "p4 = " << p.separator_width << "    # separator_width\n"
      << "p5 = " << p.separator_dilation << "    # separator_dilation\n"
      << "p6 = " << p.min_line_height << "    # min_line_height\n"
      << "p7 = " << format_double(p.peak_threshold) << "    # peak_threshold\n"
      << "p8 = " << p.height_adjustment << "    # height_adjustment\n"
      << "text_is_dark = " << (c.text_is_dark ? "true" : "false") << '\n'
      << "overlap_merge = " << (c.overlap_merge ? "true" : "false") << '\n'
      << "noise_floor = " << format_double(c.noise_floor) << '\n'
      << "theta = " << format_double(c.theta) << '\n';
}

void write_config(const Config& config, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write config " + path.string());
  write_config(config, out);
}

}  // namespace combiseg
