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

#include "tim/light_rules.hpp"

#include "tim/error.hpp"

#include <algorithm>
#include <numeric>

namespace tim::rules
{

using geometry::Turn;

bool r1_1_has_light(const Segment & segment)
{
  return !segment.lights.empty();
}

bool r1_2_is_moving(std::span<const double> speeds, const LightRuleParams & p)
{
  const auto moving = std::count_if(speeds.begin(), speeds.end(),
                                    [&](double v) { return v > p.v_stop_light; });
  return static_cast<std::size_t>(moving) >= samples_for(p.l_move);
}

bool r1_3_trajectory_crosses(const Segment & segment, const TrafficLightTrack & light,
                             const LightRuleParams & p)
{
  const std::vector<Vec2> pts = segment.positions();
  for (const Vec2 & q : pts) {
    if (distance(q, light.stop_line) < p.d_pass) {
      return true;
    }
  }
  try {
    const geometry::FittedPath path = geometry::fit_and_extend(pts, p.d_poly, p.p_extend);
    return geometry::passes_point(path, light.stop_line, p.d_pass);
  } catch (const DegenerateFit &) {
    return false;
  }
}

bool classify_stop_branch(const Segment & segment, const TrafficLightTrack & light,
                          const LightRuleParams & p)
{
  const auto & steps = segment.steps;
  const std::size_t n = steps.size();
  const std::size_t begin = std::min(samples_for(p.l_begin), n);
  const std::size_t end = std::min(samples_for(p.l_end), n);
  if (n == 0) {
    return false;
  }
  for (std::size_t i = 0; i < begin; ++i) {
    if (!(steps[i].speed > p.v_stop_light)) {
      return false;
    }
  }
  for (std::size_t i = n - end; i < n; ++i) {
    if (!(steps[i].speed < p.v_stop_light)) {
      return false;
    }
  }
  return distance(steps.back().position, light.stop_line) < p.d_stop;
}

PassOutcome classify_pass_branch(const Segment & segment, const TrafficLightTrack & light,
                                 const LightRuleParams & p)
{
  PassOutcome out;
  const std::vector<Vec2> pts = segment.positions();
  if (pts.size() < 3) {
    return out;
  }
  const auto flip = geometry::first_sign_flip(pts, light.stop_line);
  const auto dip = geometry::distance_dip_index(pts, light.stop_line);
  if (!flip && !dip) {
    return out;
  }
  const std::size_t t_star = std::min(flip.value_or(pts.size()), dip.value_or(pts.size())) + 1;
  out.crossing_index = t_star;
  if (!(pts.size() - t_star > samples_for(p.l_extend))) {
    return out;
  }
  try {
    const double eta = geometry::turn_measure(pts.front(), light.stop_line, pts.back());
    out.eta = eta;
    out.turn = geometry::classify_eta(eta, geometry::TurnThresholds::for_light(p));
  } catch (const ZeroLengthVector &) {
    out.turn = Turn::Indeterminate;
  }
  return out;
}

LightClassification classify_light_interaction(const Segment & segment, const LightRuleParams & p)
{
  LightClassification out;
  if (!r1_1_has_light(segment) || segment.steps.empty()) {
    return out;
  }
  if (!r1_2_is_moving(segment.speeds(), p)) {
    return out;
  }
  const Vec2 start = segment.steps.front().position;
  std::vector<std::size_t> order(segment.lights.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return distance(segment.lights[a].stop_line, start) <
           distance(segment.lights[b].stop_line, start);
  });

  for (std::size_t li : order) {
    const TrafficLightTrack & light = segment.lights[li];
    if (!r1_3_trajectory_crosses(segment, light, p)) {
      continue;
    }
    InteractionCategory category = InteractionCategory::None;
    std::optional<double> eta;
    if (classify_stop_branch(segment, light, p)) {
      category = InteractionCategory::LightStop;
    } else {
      const PassOutcome pass = classify_pass_branch(segment, light, p);
      eta = pass.eta;
      switch (pass.turn) {
        case Turn::Left:
          category = InteractionCategory::LightLeftTurn;
          break;
        case Turn::Right:
          category = InteractionCategory::LightRightTurn;
          break;
        case Turn::Straight:
          category = InteractionCategory::LightStraight;
          break;
        case Turn::Indeterminate:
          break;
      }
    }
    if (category != InteractionCategory::None) {
      out.category = category;
      out.light_index = li;
      out.influencing_light = light;
      out.eta = eta;
      return out;
    }
  }
  return out;
}

}  // namespace tim::rules
