#include "striderig/config.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include "striderig/errors.hpp"

namespace striderig {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& value) {
  std::size_t pos = 0;
  double d = 0.0;
  try {
    d = std::stod(value, &pos);
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "': not a number: '" + value + "'");
  }
  if (pos != value.size())
    throw ConfigError("config key '" + key + "': trailing junk in '" + value + "'");
  return d;
}

int parse_int(const std::string& key, const std::string& value) {
  const double d = parse_double(key, value);
  const int i = static_cast<int>(d);
  if (static_cast<double>(i) != d)
    throw ConfigError("config key '" + key + "': expected an integer, got '" + value + "'");
  return i;
}

}  // namespace

void EngineConfig::validate() const {
  auto fail = [](const std::string& msg) { throw ConfigError(msg); };
  if (!(sample_hz > 0.0)) fail("sample_hz must be > 0");
  if (!(cutoff_hz > 0.0) || !(cutoff_hz < sample_hz / 2.0))
    fail("cutoff_hz must lie in (0, sample_hz/2)");
  if (filter_order < 1 || filter_order > 8) fail("filter_order must be 1..8");
  if (velocity_estimator != "first_difference" &&
      velocity_estimator != "central_difference")
    fail("velocity_estimator must be first_difference or central_difference");
  if (!(z_max > 0.0)) fail("z_max must be > 0");
  if (!(y_max > 0.0)) fail("y_max must be > 0");
  if (!(0.5 * z_max < l_leg))
    fail("l_leg must exceed z_max/2 or the pelvis model loses its footing");
  if (!(vertical_scale >= 0.0)) fail("vertical_scale must be >= 0");
  if (!(alpha > 0.0) || !(alpha <= 1.0)) fail("alpha must lie in (0, 1]");
  if (!(p1 > 0.0)) fail("p1 must be > 0");
  if (!(v1 > 0.0)) fail("v1 must be > 0");
  if (!(v1 < v2)) fail("v1 must be < v2");
  if (!(t_stop > 0.0)) fail("t_stop must be > 0");
  if (spike_guard != "corroborated" && spike_guard != "strict" && spike_guard != "off")
    fail("spike_guard must be corroborated, strict, or off");
  if (!(gain_k >= 0.0)) fail("gain_k must be >= 0");
  if (!(speed_cap > 0.0)) fail("speed_cap must be > 0");
  if (!(decay_min_s >= 0.0)) fail("decay_min_s must be >= 0");
  if (!(decay_period_factor >= 0.0)) fail("decay_period_factor must be >= 0");
  if (!(speed_decay_alpha > 0.0) || !(speed_decay_alpha <= 1.0))
    fail("speed_decay_alpha must lie in (0, 1]");
  if (!(goal_m > 0.0)) fail("goal_m must be > 0");
  if (!(calib_min_s > 0.0)) fail("calib_min_s must be > 0");
  if (!(calib_max_std > 0.0)) fail("calib_max_std must be > 0");
  if (!(stop_epsilon > 0.0)) fail("stop_epsilon must be > 0");
}

EngineConfig load_config(std::istream& in) {
  EngineConfig cfg;
  std::optional<double> explicit_period;

  const std::map<std::string, std::function<void(const std::string&)>> setters = {
      {"sample_hz", [&](const std::string& v) { cfg.sample_hz = parse_double("sample_hz", v); }},
      {"cutoff_hz", [&](const std::string& v) { cfg.cutoff_hz = parse_double("cutoff_hz", v); }},
      {"filter_order", [&](const std::string& v) { cfg.filter_order = parse_int("filter_order", v); }},
      {"velocity_estimator", [&](const std::string& v) { cfg.velocity_estimator = v; }},
      {"z_max", [&](const std::string& v) { cfg.z_max = parse_double("z_max", v); }},
      {"y_max", [&](const std::string& v) { cfg.y_max = parse_double("y_max", v); }},
      {"H", [&](const std::string& v) { explicit_period = parse_double("H", v); }},
      {"l_leg", [&](const std::string& v) { cfg.l_leg = parse_double("l_leg", v); }},
      {"vertical_scale", [&](const std::string& v) { cfg.vertical_scale = parse_double("vertical_scale", v); }},
      {"alpha", [&](const std::string& v) { cfg.alpha = parse_double("alpha", v); }},
      {"y_init", [&](const std::string& v) { cfg.y_init = parse_double("y_init", v); }},
      {"ik_hint_forward_m", [&](const std::string& v) { cfg.ik_hint_forward_m = parse_double("ik_hint_forward_m", v); }},
      {"p1", [&](const std::string& v) { cfg.p1 = parse_double("p1", v); }},
      {"v1", [&](const std::string& v) { cfg.v1 = parse_double("v1", v); }},
      {"v2", [&](const std::string& v) { cfg.v2 = parse_double("v2", v); }},
      {"t_stop", [&](const std::string& v) { cfg.t_stop = parse_double("t_stop", v); }},
      {"spike_guard", [&](const std::string& v) { cfg.spike_guard = v; }},
      {"gain_k", [&](const std::string& v) { cfg.gain_k = parse_double("gain_k", v); }},
      {"speed_cap", [&](const std::string& v) { cfg.speed_cap = parse_double("speed_cap", v); }},
      {"decay_min_s", [&](const std::string& v) { cfg.decay_min_s = parse_double("decay_min_s", v); }},
      {"decay_period_factor", [&](const std::string& v) { cfg.decay_period_factor = parse_double("decay_period_factor", v); }},
      {"speed_decay_alpha", [&](const std::string& v) { cfg.speed_decay_alpha = parse_double("speed_decay_alpha", v); }},
      {"goal_m", [&](const std::string& v) { cfg.goal_m = parse_double("goal_m", v); }},
      {"calib_min_s", [&](const std::string& v) { cfg.calib_min_s = parse_double("calib_min_s", v); }},
      {"calib_max_std", [&](const std::string& v) { cfg.calib_max_std = parse_double("calib_max_std", v); }},
      {"stop_epsilon", [&](const std::string& v) { cfg.stop_epsilon = parse_double("stop_epsilon", v); }},
  };

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(line_no) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const auto it = setters.find(key);
    if (it == setters.end())
      throw ConfigError("config line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    it->second(value);
  }

  // The cosine period is derived state; a file may pin it only redundantly.
  if (explicit_period && std::abs(*explicit_period - cfg.period()) > 1e-12)
    throw ConfigError("config key 'H' must equal 4*y_max (got " +
                      std::to_string(*explicit_period) + ", expected " +
                      std::to_string(cfg.period()) + ")");
  cfg.validate();
  return cfg;
}

EngineConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  return load_config(in);
}

}  // namespace striderig
