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

#include "tim/types.hpp"

#include "tim/error.hpp"
#include "tim/validate.hpp"

#include <algorithm>
#include <sstream>

namespace tim
{

std::vector<Vec2> Segment::positions() const
{
  std::vector<Vec2> out;
  out.reserve(steps.size());
  for (const auto & s : steps) {
    out.push_back(s.position);
  }
  return out;
}

std::vector<double> Segment::speeds() const
{
  std::vector<double> out;
  out.reserve(steps.size());
  for (const auto & s : steps) {
    out.push_back(s.speed);
  }
  return out;
}

std::vector<double> TrajectoryRecord::speeds() const
{
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto & r : rows) {
    out.push_back(r.v);
  }
  return out;
}

std::vector<double> TrajectoryRecord::accelerations() const
{
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto & r : rows) {
    out.push_back(r.a);
  }
  return out;
}

std::vector<Vec2> TrajectoryRecord::positions() const
{
  std::vector<Vec2> out;
  out.reserve(rows.size());
  for (const auto & r : rows) {
    out.push_back({r.x, r.y});
  }
  return out;
}

namespace
{

constexpr std::array<std::string_view, 9> kCategoryNames = {
  "LightStop",   "LightLeftTurn", "LightRightTurn",  "LightStraight",   "SignFourWay",
  "SignRightTurn", "SignLeftOneStep", "SignLeftTwoStep", "None",
};

void require(bool ok, const char * key, const char * message)
{
  if (!ok) {
    throw ConfigError(key, message);
  }
}

}  // namespace

std::string_view to_string(InteractionCategory category)
{
  return kCategoryNames[static_cast<std::size_t>(category)];
}

std::optional<InteractionCategory> category_from_string(std::string_view name)
{
  for (std::size_t i = 0; i < kCategoryNames.size(); ++i) {
    if (kCategoryNames[i] == name) {
      return static_cast<InteractionCategory>(i);
    }
  }
  return std::nullopt;
}

bool is_light_category(InteractionCategory c)
{
  return c == InteractionCategory::LightStop || c == InteractionCategory::LightLeftTurn ||
         c == InteractionCategory::LightRightTurn || c == InteractionCategory::LightStraight;
}

bool is_sign_category(InteractionCategory c)
{
  return c != InteractionCategory::None && !is_light_category(c);
}

void LightRuleParams::validate() const
{
  require(l_move > 0, "light.l_move", "must be > 0");
  require(d_pass > 0, "light.d_pass", "must be > 0");
  require(d_poly >= 1, "light.d_poly", "must be >= 1");
  require(p_extend > 0 && p_extend < 1, "light.p_extend", "must lie in (0, 1)");
  require(v_stop_light > 0, "light.v_stop", "must be > 0");
  require(l_begin > 0, "light.l_begin", "must be > 0");
  require(l_end > 0, "light.l_end", "must be > 0");
  require(d_stop > 0, "light.d_stop", "must be > 0");
  require(l_extend > 0, "light.l_extend", "must be > 0");
  require(samples_for(l_begin) <= kSegmentSteps, "light.l_begin", "exceeds the segment length");
  require(samples_for(l_end) <= kSegmentSteps, "light.l_end", "exceeds the segment length");
  require(
    eta_right < eta_through_2 && eta_through_2 < eta_through_1 && eta_through_1 < eta_left,
    "light.eta", "thresholds must satisfy eta_right < eta_through_2 < eta_through_1 < eta_left");
}

void SignRuleParams::validate() const
{
  require(r_stop > 0, "sign.r_stop", "must be > 0");
  require(l_stop > 0, "sign.l_stop", "must be > 0");
  require(v_stop_sign > 0, "sign.v_stop", "must be > 0");
  require(delta_t_stop > 0, "sign.delta_t_stop", "must be > 0");
  require(eta_right_sign < 0 && 0 < eta_left_sign, "sign.eta",
          "thresholds must satisfy eta_right < 0 < eta_left");
  require(dbscan_eps > 0, "sign.dbscan_eps", "must be > 0");
  require(dbscan_min_pts >= 1, "sign.dbscan_min_pts", "must be >= 1");
}

std::string describe(const Violation & v)
{
  std::ostringstream os;
  os << v.field;
  if (v.index) {
    os << '[' << *v.index << ']';
  }
  os << ": " << v.message;
  return os.str();
}

std::vector<Violation> validate_segment(const Segment & segment)
{
  std::vector<Violation> out;
  auto finite = [](Vec2 p) { return std::isfinite(p.x) && std::isfinite(p.y); };

  if (segment.steps.size() != kSegmentSteps) {
    out.push_back({"steps", std::nullopt,
                   "expected " + std::to_string(kSegmentSteps) + " steps, got " +
                     std::to_string(segment.steps.size())});
  }
  for (std::size_t i = 0; i < segment.steps.size(); ++i) {
    const auto & s = segment.steps[i];
    if (s.index != static_cast<int>(i) + 1) {
      out.push_back({"steps.index", i,
                     "expected index " + std::to_string(i + 1) + ", got " + std::to_string(s.index)});
    }
    if (!finite(s.position)) {
      out.push_back({"steps.position", i, "non-finite coordinate"});
    }
    if (!std::isfinite(s.speed) || s.speed < 0.0) {
      out.push_back({"steps.speed", i, "speed must be finite and >= 0"});
    }
  }
  for (std::size_t l = 0; l < segment.lights.size(); ++l) {
    const auto & light = segment.lights[l];
    const std::string prefix = "lights[" + std::to_string(l) + "]";
    if (!finite(light.stop_line)) {
      out.push_back({prefix + ".stop_line", std::nullopt, "non-finite coordinate"});
    }
    if (light.states.size() != kSegmentSteps) {
      out.push_back({prefix + ".states", std::nullopt,
                     "expected " + std::to_string(kSegmentSteps) + " states, got " +
                       std::to_string(light.states.size())});
    }
    for (std::size_t k = 0; k < light.states.size(); ++k) {
      const int code = light.states[k];
      if (code < 0 || code > kMaxLightState) {
        out.push_back({prefix + ".states", k, "state code " + std::to_string(code) + " outside 0..8"});
      }
    }
  }
  for (std::size_t s = 0; s < segment.signs.size(); ++s) {
    if (!finite(segment.signs[s].position)) {
      out.push_back({"signs", s, "non-finite coordinate"});
    }
  }
  return out;
}

}  // namespace tim
