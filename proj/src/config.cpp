#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include "macrolens/error.hpp"
#include "macrolens/figures.hpp"

namespace macrolens {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

[[noreturn]] void config_error(int line, const std::string& msg) {
  throw Error(ErrorKind::Config, "line " + std::to_string(line) + ": " + msg);
}

double parse_real(const std::string& text, int line, const std::string& key) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(v)) {
    config_error(line, "'" + key + "' expects a real number, got '" + text + "'");
  }
  return v;
}

int parse_int(const std::string& text, int line, const std::string& key) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    config_error(line, "'" + key + "' expects an integer, got '" + text + "'");
  }
  return v;
}

}  // namespace

void SweepSpec::validate() const {
  if (steps < 2) throw Error(ErrorKind::Config, "steps must be >= 2");
  if (!(start < stop)) throw Error(ErrorKind::Config, "start must be below stop");
  if (sigmas.empty()) throw Error(ErrorKind::Config, "at least one sigma is required");
  for (double s : sigmas) {
    if (!(s >= 0.0)) throw Error(ErrorKind::Config, "sigma entries must be >= 0");
  }
  for (const auto& m : measures) {
    if (std::find(kSweepMeasures.begin(), kSweepMeasures.end(), m) == kSweepMeasures.end()) {
      throw Error(ErrorKind::Config, "unknown measure '" + m + "'");
    }
  }
  if (m < 1) throw Error(ErrorKind::Config, "m must be >= 1");
  if (detectors.empty() || detectors.size() > 2) throw Error(ErrorKind::Config, "one or two detectors expected");
}

SweepSpec parse_sweep_config(std::istream& in) {
  SweepSpec spec;
  std::set<std::string> seen;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::string text = trim(raw.substr(0, raw.find('#')));
    if (text.empty()) continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos) config_error(line, "expected 'key = value'");
    const std::string key = trim(std::string_view(text).substr(0, eq));
    const std::string value = trim(std::string_view(text).substr(eq + 1));
    if (!seen.insert(key).second) config_error(line, "duplicate key '" + key + "'");
    if (value.empty()) config_error(line, "empty value for '" + key + "'");

    try {
      if (key == "family") spec.family = parse_family(value);
      else if (key == "start") spec.start = parse_real(value, line, key);
      else if (key == "stop") spec.stop = parse_real(value, line, key);
      else if (key == "steps") spec.steps = parse_int(value, line, key);
      else if (key == "detector") {
        spec.detectors.clear();
        for (const auto& d : split_list(value)) {
          DetectorKind kind = DetectorKind::Homodyne;
          if (d == "pnrd") kind = DetectorKind::Pnrd;
          else if (d != "homodyne") config_error(line, "detector must be homodyne, pnrd or a list of both");
          if (std::find(spec.detectors.begin(), spec.detectors.end(), kind) != spec.detectors.end()) {
            config_error(line, "detector '" + d + "' listed twice");
          }
          spec.detectors.push_back(kind);
        }
      } else if (key == "angle") spec.angle = parse_real(value, line, key);
      else if (key == "m") spec.m = parse_int(value, line, key);
      else if (key == "sigmas") {
        spec.sigmas.clear();
        for (const auto& s : split_list(value)) spec.sigmas.push_back(parse_real(s, line, key));
      } else if (key == "measures") spec.measures = split_list(value);
      else if (key == "output") spec.output = value;
      else if (key == "format") spec.format = parse_format(value);
      else config_error(line, "unknown key '" + key + "'");
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::Config) throw;
      config_error(line, e.what());
    }
  }
  for (const char* required : {"family", "start", "stop", "steps", "detector"}) {
    if (!seen.count(required)) throw Error(ErrorKind::Config, std::string("missing required key '") + required + "'");
  }
  spec.validate();
  return spec;
}

SweepSpec load_sweep_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Config, "cannot open config file '" + path + "'");
  return parse_sweep_config(in);
}

}  // namespace macrolens
