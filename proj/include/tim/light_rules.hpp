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

// Traffic-light interaction rules.

#ifndef TIM_LIGHT_RULES_HPP_
#define TIM_LIGHT_RULES_HPP_

#include "tim/geometry.hpp"
#include "tim/types.hpp"

#include <optional>
#include <span>

namespace tim::rules
{

struct LightClassification
{
  InteractionCategory category{InteractionCategory::None};
  std::optional<std::size_t> light_index;  // into segment.lights
  std::optional<TrafficLightTrack> influencing_light;
  std::optional<double> eta;
};

/// True when the segment carries any light.
bool r1_1_has_light(const Segment & segment);

/// Moving: at least 10 l_move samples faster than v_stop_light.
bool r1_2_is_moving(std::span<const double> speeds, const LightRuleParams & p);

/// Passage: a raw position, or a dense sample of the fitted and extended path,
/// lies within d_pass of the stop line. A degenerate fit counts as no passage.
bool r1_3_trajectory_crosses(const Segment & segment, const TrafficLightTrack & light,
                             const LightRuleParams & p);

/// Stop branch: moving during the first l_begin, stopped during the last
/// l_end, and ending within d_stop of the stop line.
bool classify_stop_branch(const Segment & segment, const TrafficLightTrack & light,
                          const LightRuleParams & p);

struct PassOutcome
{
  geometry::Turn turn{geometry::Turn::Indeterminate};  // Indeterminate means rejected
  std::optional<std::size_t> crossing_index;           // 1-based step index
  std::optional<double> eta;
};

/// Pass branch. The crossing index is the earlier of the first sign flip and
/// the distance minimum; more than 10 l_extend samples must follow it.
PassOutcome classify_pass_branch(const Segment & segment, const TrafficLightTrack & light,
                                 const LightRuleParams & p);

/// Lights are tried nearest-first (distance to the first position, stable on
/// ties); the first one producing a category wins.
LightClassification classify_light_interaction(const Segment & segment, const LightRuleParams & p);

}  // namespace tim::rules

#endif  // TIM_LIGHT_RULES_HPP_
