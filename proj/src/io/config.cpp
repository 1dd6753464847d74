// Copyright 2026 The tim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "tim/io/config.hpp"

#include "tim/error.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace tim::io
{

namespace
{

using Setter = std::function<void(ParamBundle &, std::string_view, const std::string &)>;

std::string_view trim(std::string_view s)
{
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) {
    return {};
  }
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_double(std::string_view s, const std::string & key)
{
  s = trim(s);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw ConfigError(key, "expected a number, got '" + std::string(s) + "'");
  }
  return v;
}

template <typename Int>
Int parse_int(std::string_view s, const std::string & key)
{
  s = trim(s);
  Int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw ConfigError(key, "expected an integer, got '" + std::string(s) + "'");
  }
  return v;
}

bool parse_bool(std::string_view s, const std::string & key)
{
  s = trim(s);
  if (s == "true" || s == "1" || s == "yes" || s == "on") {
    return true;
  }
  if (s == "false" || s == "0" || s == "no" || s == "off") {
    return false;
  }
  throw ConfigError(key, "expected true or false, got '" + std::string(s) + "'");
}

idm::Range parse_range(std::string_view s, const std::string & key)
{
  const auto comma = s.find(',');
  if (comma == std::string_view::npos) {
    throw ConfigError(key, "expected 'lo, hi', got '" + std::string(trim(s)) + "'");
  }
  return {parse_double(s.substr(0, comma), key), parse_double(s.substr(comma + 1), key)};
}

template <typename T>
Setter real(T ParamBundle::*group, double T::*member)
{
  return [group, member](ParamBundle & b, std::string_view v, const std::string & key) {
    (b.*group).*member = parse_double(v, key);
  };
}

template <typename T, typename Int>
Setter integer(T ParamBundle::*group, Int T::*member)
{
  return [group, member](ParamBundle & b, std::string_view v, const std::string & key) {
    (b.*group).*member = parse_int<Int>(v, key);
  };
}

template <typename T>
Setter boolean(T ParamBundle::*group, bool T::*member)
{
  return [group, member](ParamBundle & b, std::string_view v, const std::string & key) {
    (b.*group).*member = parse_bool(v, key);
  };
}

Setter range(idm::Range idm::CalibrationSpec::*member)
{
  return [member](ParamBundle & b, std::string_view v, const std::string & key) {
    b.calibration.*member = parse_range(v, key);
  };
}

const std::map<std::string, Setter, std::less<>> & setters()
{
  using L = LightRuleParams;
  using S = SignRuleParams;
  using Q = quality::QualityThresholds;
  using C = idm::CalibrationSpec;
  static const std::map<std::string, Setter, std::less<>> table = {
    {"light.l_move", real(&ParamBundle::light, &L::l_move)},
    {"light.d_pass", real(&ParamBundle::light, &L::d_pass)},
    {"light.d_poly", integer(&ParamBundle::light, &L::d_poly)},
    {"light.p_extend", real(&ParamBundle::light, &L::p_extend)},
    {"light.v_stop", real(&ParamBundle::light, &L::v_stop_light)},
    {"light.l_begin", real(&ParamBundle::light, &L::l_begin)},
    {"light.l_end", real(&ParamBundle::light, &L::l_end)},
    {"light.d_stop", real(&ParamBundle::light, &L::d_stop)},
    {"light.l_extend", real(&ParamBundle::light, &L::l_extend)},
    {"light.eta_left", real(&ParamBundle::light, &L::eta_left)},
    {"light.eta_right", real(&ParamBundle::light, &L::eta_right)},
    {"light.eta_through_1", real(&ParamBundle::light, &L::eta_through_1)},
    {"light.eta_through_2", real(&ParamBundle::light, &L::eta_through_2)},
    {"sign.r_stop", real(&ParamBundle::sign, &S::r_stop)},
    {"sign.l_stop", real(&ParamBundle::sign, &S::l_stop)},
    {"sign.v_stop", real(&ParamBundle::sign, &S::v_stop_sign)},
    {"sign.delta_t_stop", real(&ParamBundle::sign, &S::delta_t_stop)},
    {"sign.eta_left", real(&ParamBundle::sign, &S::eta_left_sign)},
    {"sign.eta_right", real(&ParamBundle::sign, &S::eta_right_sign)},
    {"sign.dbscan_eps", real(&ParamBundle::sign, &S::dbscan_eps)},
    {"sign.dbscan_min_pts", integer(&ParamBundle::sign, &S::dbscan_min_pts)},
    {"sign.stop_area_center",
     [](ParamBundle & b, std::string_view v, const std::string & key) {
       v = trim(v);
       if (v == "nearest_trajectory_point") {
         b.sign.stop_area_center = StopAreaCenter::NearestTrajectoryPoint;
       } else if (v == "sign_position") {
         b.sign.stop_area_center = StopAreaCenter::SignPosition;
       } else {
         throw ConfigError(key, "expected nearest_trajectory_point or sign_position");
       }
     }},
    {"quality.accel_min", real(&ParamBundle::quality, &Q::accel_min)},
    {"quality.accel_max", real(&ParamBundle::quality, &Q::accel_max)},
    {"quality.jerk_min", real(&ParamBundle::quality, &Q::jerk_min)},
    {"quality.jerk_max", real(&ParamBundle::quality, &Q::jerk_max)},
    {"quality.window", real(&ParamBundle::quality, &Q::window)},
    {"quality.max_inversions_per_window",
     integer(&ParamBundle::quality, &Q::max_inversions_per_window)},
    {"denoise.wavelet",
     [](ParamBundle & b, std::string_view v, const std::string &) {
       b.denoise.wavelet = std::string(trim(v));
     }},
    {"denoise.levels", integer(&ParamBundle::denoise, &signal::DenoiseConfig::levels)},
    {"denoise.boundary",
     [](ParamBundle & b, std::string_view v, const std::string & key) {
       v = trim(v);
       if (v == "consistent") {
         b.denoise.boundary = signal::Boundary::Consistent;
       } else if (v == "symmetric") {
         b.denoise.boundary = signal::Boundary::Symmetric;
       } else {
         throw ConfigError(key, "expected consistent or symmetric");
       }
     }},
    {"denoise.denoise_acceleration",
     boolean(&ParamBundle::denoise, &signal::DenoiseConfig::denoise_acceleration)},
    {"calibration.n_samples", integer(&ParamBundle::calibration, &C::n_samples)},
    {"calibration.seed", integer(&ParamBundle::calibration, &C::seed)},
    {"calibration.v0", range(&C::v0)},
    {"calibration.T", range(&C::T)},
    {"calibration.a_max", range(&C::a_max)},
    {"calibration.b", range(&C::b)},
    {"calibration.s0", range(&C::s0)},
    {"calibration.delta", range(&C::delta)},
    {"calibration.exclude_dwell", boolean(&ParamBundle::calibration, &C::exclude_dwell)},
    {"calibration.objective",
     [](ParamBundle & b, std::string_view v, const std::string & key) {
       v = trim(v);
       if (v == "pooled") {
         b.calibration.objective = idm::Objective::Pooled;
       } else if (v == "mean_per_trajectory") {
         b.calibration.objective = idm::Objective::MeanPerTrajectory;
       } else {
         throw ConfigError(key, "expected pooled or mean_per_trajectory");
       }
     }},
    {"calibration.split", real(&ParamBundle::calibration, &C::split)},
  };
  return table;
}

std::string shortest(double v)
{
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return ec == std::errc() ? std::string(buf, ptr) : std::string("nan");
}

std::string range_text(const idm::Range & r)
{
  return shortest(r.lo) + ", " + shortest(r.hi);
}

}  // namespace

void ParamBundle::validate() const
{
  light.validate();
  sign.validate();
  quality.validate();
  const auto & w = signal::wavelet(denoise.wavelet);
  const int max_level = signal::dwt_max_level(kSegmentSteps, w.length());
  if (denoise.levels < 1 || denoise.levels > max_level) {
    throw ConfigError("denoise.levels", "must lie in 1.." + std::to_string(max_level) + " for " +
                                          w.name + " on " + std::to_string(kSegmentSteps) +
                                          " samples");
  }
  calibration.validate();
}

ParamBundle parse_params(std::string_view text, const std::string & source)
{
  ParamBundle bundle;
  std::string section;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t end = std::min(text.find('\n', start), text.size());
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    const auto comment = line.find_first_of("#;");
    if (comment != std::string_view::npos) {
      line = line.substr(0, comment);
    }
    line = trim(line);
    if (line.empty()) {
      continue;
    }
    const std::string where = source + ":" + std::to_string(line_no);
    if (line.front() == '[') {
      if (line.back() != ']') {
        throw ConfigError("", where + ": malformed section header");
      }
      section = std::string(trim(line.substr(1, line.size() - 2)));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("", where + ": expected 'key = value'");
    }
    const std::string key = section + "." + std::string(trim(line.substr(0, eq)));
    if (section.empty()) {
      throw ConfigError(key.substr(1), where + ": key outside of any section");
    }
    const auto it = setters().find(key);
    if (it == setters().end()) {
      throw ConfigError(key, where + ": unknown key");
    }
    it->second(bundle, line.substr(eq + 1), key);
  }
  bundle.validate();
  return bundle;
}

std::optional<std::filesystem::path> resolve_config_path(
  const std::optional<std::filesystem::path> & path)
{
  if (const char * env = std::getenv("TIM_CONFIG"); env != nullptr && *env != '\0') {
    return std::filesystem::path(env);
  }
  return path;
}

ParamBundle load_params(const std::optional<std::filesystem::path> & path)
{
  const auto resolved = resolve_config_path(path);
  if (!resolved) {
    ParamBundle defaults;
    defaults.validate();
    return defaults;
  }
  std::ifstream in(*resolved, std::ios::binary);
  if (!in) {
    throw ConfigError("", "cannot read config file '" + resolved->string() + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_params(buf.str(), resolved->string());
}

std::string format_params(const ParamBundle & b)
{
  std::ostringstream o;
  o << "[light]\n"
    << "l_move = " << shortest(b.light.l_move) << "\n"
    << "d_pass = " << shortest(b.light.d_pass) << "\n"
    << "d_poly = " << b.light.d_poly << "\n"
    << "p_extend = " << shortest(b.light.p_extend) << "\n"
    << "v_stop = " << shortest(b.light.v_stop_light) << "\n"
    << "l_begin = " << shortest(b.light.l_begin) << "\n"
    << "l_end = " << shortest(b.light.l_end) << "\n"
    << "d_stop = " << shortest(b.light.d_stop) << "\n"
    << "l_extend = " << shortest(b.light.l_extend) << "\n"
    << "eta_left = " << shortest(b.light.eta_left) << "\n"
    << "eta_right = " << shortest(b.light.eta_right) << "\n"
    << "eta_through_1 = " << shortest(b.light.eta_through_1) << "\n"
    << "eta_through_2 = " << shortest(b.light.eta_through_2) << "\n\n"
    << "[sign]\n"
    << "r_stop = " << shortest(b.sign.r_stop) << "\n"
    << "l_stop = " << shortest(b.sign.l_stop) << "\n"
    << "v_stop = " << shortest(b.sign.v_stop_sign) << "\n"
    << "delta_t_stop = " << shortest(b.sign.delta_t_stop) << "\n"
    << "eta_left = " << shortest(b.sign.eta_left_sign) << "\n"
    << "eta_right = " << shortest(b.sign.eta_right_sign) << "\n"
    << "dbscan_eps = " << shortest(b.sign.dbscan_eps) << "\n"
    << "dbscan_min_pts = " << b.sign.dbscan_min_pts << "\n"
    << "stop_area_center = "
    << (b.sign.stop_area_center == StopAreaCenter::SignPosition ? "sign_position"
                                                                : "nearest_trajectory_point")
    << "\n\n"
    << "[quality]\n"
    << "accel_min = " << shortest(b.quality.accel_min) << "\n"
    << "accel_max = " << shortest(b.quality.accel_max) << "\n"
    << "jerk_min = " << shortest(b.quality.jerk_min) << "\n"
    << "jerk_max = " << shortest(b.quality.jerk_max) << "\n"
    << "window = " << shortest(b.quality.window) << "\n"
    << "max_inversions_per_window = " << b.quality.max_inversions_per_window << "\n\n"
    << "[denoise]\n"
    << "wavelet = " << b.denoise.wavelet << "\n"
    << "levels = " << b.denoise.levels << "\n"
    << "boundary = " << signal::to_string(b.denoise.boundary) << "\n"
    << "denoise_acceleration = " << (b.denoise.denoise_acceleration ? "true" : "false") << "\n\n"
    << "[calibration]\n"
    << "n_samples = " << b.calibration.n_samples << "\n"
    << "seed = " << b.calibration.seed << "\n"
    << "v0 = " << range_text(b.calibration.v0) << "\n"
    << "T = " << range_text(b.calibration.T) << "\n"
    << "a_max = " << range_text(b.calibration.a_max) << "\n"
    << "b = " << range_text(b.calibration.b) << "\n"
    << "s0 = " << range_text(b.calibration.s0) << "\n"
    << "delta = " << range_text(b.calibration.delta) << "\n"
    << "exclude_dwell = " << (b.calibration.exclude_dwell ? "true" : "false") << "\n"
    << "objective = " << idm::to_string(b.calibration.objective) << "\n"
    << "split = " << shortest(b.calibration.split) << "\n";
  return o.str();
}

}  // namespace tim::io
