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

#include "tim/sign_rules.hpp"

#include "tim/dbscan.hpp"
#include "tim/error.hpp"

namespace tim::rules
{

using geometry::Turn;

namespace
{

// Members of the cluster that contains `anchor` (indices into `points`), or
// empty when the anchor is noise.
std::vector<std::size_t> anchor_cluster(std::span<const Vec2> points, std::size_t anchor,
                                        const SignRuleParams & p)
{
  const auto assignment = clustering::dbscan(points, p.dbscan_eps, p.dbscan_min_pts);
  const int label = assignment.labels[anchor];
  if (label == clustering::kNoise) {
    return {};
  }
  return assignment.members(label);
}

}  // namespace

std::size_t initial_nearest_sign_index(const Segment & segment)
{
  if (segment.signs.empty()) {
    throw NoSigns("segment '" + segment.id + "' has no stop signs");
  }
  const Vec2 start = segment.steps.empty() ? Vec2{} : segment.steps.front().position;
  std::size_t best = 0;
  double best_d = distance(segment.signs[0].position, start);
  for (std::size_t i = 1; i < segment.signs.size(); ++i) {
    const double d = distance(segment.signs[i].position, start);
    if (d < best_d) {
      best_d = d;
      best = i;
    }
  }
  return best;
}

StopSign initial_nearest_sign(const Segment & segment)
{
  return segment.signs[initial_nearest_sign_index(segment)];
}

bool r2_2_decelerates(const Segment & segment, const StopSign & sign)
{
  const auto & steps = segment.steps;
  std::vector<double> d(steps.size());
  for (std::size_t i = 0; i < steps.size(); ++i) {
    d[i] = distance(steps[i].position, sign.position);
  }
  for (std::size_t i = 0; i < steps.size(); ++i) {
    for (std::size_t j = i + 1; j < steps.size(); ++j) {
      if (d[i] > d[j] && steps[i].speed > steps[j].speed) {
        return true;
      }
    }
  }
  return false;
}

StopOutcome r2_3_stops(const Segment & segment, const StopSign & sign, const SignRuleParams & p)
{
  StopOutcome out;
  const auto & steps = segment.steps;
  if (steps.empty()) {
    return out;
  }
  if (p.stop_area_center == StopAreaCenter::SignPosition) {
    out.center = sign.position;
  } else {
    std::size_t nearest = 0;
    double best = distance(steps[0].position, sign.position);
    for (std::size_t i = 1; i < steps.size(); ++i) {
      const double d = distance(steps[i].position, sign.position);
      if (d < best) {
        best = d;
        nearest = i;
      }
    }
    out.center = steps[nearest].position;
  }
  std::size_t count = 0;
  for (const auto & s : steps) {
    if (s.speed < p.v_stop_sign && distance(s.position, out.center) < p.r_stop) {
      ++count;
    }
  }
  out.stopped = count >= samples_for(p.l_stop);
  return out;
}

bool detect_four_way(const Segment & segment, const SignRuleParams & p)
{
  const std::size_t n = segment.signs.size();
  if (n < 4) {
    return false;
  }
  std::vector<Vec2> pts;
  pts.reserve(n);
  for (const auto & s : segment.signs) {
    pts.push_back(s.position);
  }
  if (n == 4) {
    return geometry::convex_quadrilateral(pts);
  }

  const std::size_t anchor = initial_nearest_sign_index(segment);
  std::vector<std::size_t> members = anchor_cluster(pts, anchor, p);
  if (members.size() > 4) {
    std::vector<Vec2> sub;
    std::size_t sub_anchor = 0;
    for (std::size_t k = 0; k < members.size(); ++k) {
      if (members[k] == anchor) {
        sub_anchor = k;
      }
      sub.push_back(pts[members[k]]);
    }
    std::vector<std::size_t> refined = anchor_cluster(sub, sub_anchor, p);
    for (auto & r : refined) {
      r = members[r];
    }
    members = std::move(refined);
  }
  if (members.size() != 4) {
    return false;
  }
  std::vector<Vec2> quad;
  for (std::size_t m : members) {
    quad.push_back(pts[m]);
  }
  return geometry::convex_quadrilateral(quad);
}

Turn classify_turn(const Segment & segment, const StopSign & sign, const SignRuleParams & p)
{
  if (segment.steps.empty()) {
    return Turn::Indeterminate;
  }
  try {
    return geometry::turn_direction(segment.steps.front().position, sign.position,
                                    segment.steps.back().position,
                                    geometry::TurnThresholds::for_sign(p));
  } catch (const ZeroLengthVector &) {
    return Turn::Indeterminate;
  }
}

LeftSteps classify_left_steps(std::span<const double> speeds, const SignRuleParams & p)
{
  std::optional<std::size_t> first_end;
  std::optional<std::size_t> last_start;
  bool in_run = false;
  for (std::size_t i = 0; i < speeds.size(); ++i) {
    const bool slow = speeds[i] < p.v_stop_sign;
    if (slow && !in_run) {
      last_start = i;
    }
    if (!slow && in_run && !first_end) {
      first_end = i - 1;
    }
    in_run = slow;
  }
  if (first_end && last_start && *last_start > *first_end &&
      *last_start - *first_end > samples_for(p.delta_t_stop)) {
    return LeftSteps::TwoStep;
  }
  return LeftSteps::OneStep;
}

SignClassification classify_sign_interaction(const Segment & segment, const SignRuleParams & p)
{
  SignClassification out;
  if (segment.signs.empty() || segment.steps.empty()) {
    return out;
  }
  const StopSign sign = initial_nearest_sign(segment);
  if (!r2_2_decelerates(segment, sign)) {
    return out;
  }
  const StopOutcome stop = r2_3_stops(segment, sign, p);
  if (!stop.stopped) {
    return out;
  }

  InteractionCategory category = InteractionCategory::None;
  std::optional<double> eta;
  if (detect_four_way(segment, p)) {
    category = InteractionCategory::SignFourWay;
  } else {
    try {
      eta = geometry::turn_measure(segment.steps.front().position, sign.position,
                                   segment.steps.back().position);
    } catch (const ZeroLengthVector &) {
    }
    const Turn turn = classify_turn(segment, sign, p);
    if (turn == Turn::Right) {
      category = InteractionCategory::SignRightTurn;
    } else if (turn == Turn::Left) {
      category = classify_left_steps(segment.speeds(), p) == LeftSteps::TwoStep
                   ? InteractionCategory::SignLeftTwoStep
                   : InteractionCategory::SignLeftOneStep;
    }
  }
  if (category == InteractionCategory::None) {
    return out;
  }
  out.category = category;
  out.initial_nearest_sign = sign;
  out.eta_sign = eta;
  out.stop_area_center = stop.center;
  return out;
}

}  // namespace tim::rules
