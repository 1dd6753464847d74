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

// Stop-sign interaction rules.

#ifndef TIM_SIGN_RULES_HPP_
#define TIM_SIGN_RULES_HPP_

#include "tim/geometry.hpp"
#include "tim/types.hpp"

#include <optional>
#include <span>

namespace tim::rules
{

struct SignClassification
{
  InteractionCategory category{InteractionCategory::None};
  std::optional<StopSign> initial_nearest_sign;
  std::optional<double> eta_sign;
  std::optional<Vec2> stop_area_center;
};

/// Index of the sign nearest to the first position (first on ties).
/// Throws NoSigns when the segment has none.
std::size_t initial_nearest_sign_index(const Segment & segment);
StopSign initial_nearest_sign(const Segment & segment);

/// Deceleration: some earlier sample is both farther from the sign and faster than a later one.
bool r2_2_decelerates(const Segment & segment, const StopSign & sign);

struct StopOutcome
{
  bool stopped{false};
  Vec2 center;
};

/// Stop: at least 10 l_stop samples slower than v_stop_sign inside the stop area.
StopOutcome r2_3_stops(const Segment & segment, const StopSign & sign, const SignRuleParams & p);

/// Four-way detection. Exactly four signs are tested directly; with more, the signs
/// are clustered and the cluster holding the initial nearest sign must be a
/// convex quadrilateral (one re-clustering is allowed for clusters above four).
bool detect_four_way(const Segment & segment, const SignRuleParams & p);

/// Left / Right / Indeterminate from eta about the initial nearest sign.
geometry::Turn classify_turn(const Segment & segment, const StopSign & sign,
                             const SignRuleParams & p);

enum class LeftSteps { OneStep, TwoStep };

/// TwoStep iff two slow runs (v < v_stop_sign) are separated by more
/// than 10 delta_t_stop samples, measured from the end of one to the start of a later one.
LeftSteps classify_left_steps(std::span<const double> speeds, const SignRuleParams & p);

SignClassification classify_sign_interaction(const Segment & segment, const SignRuleParams & p);

}  // namespace tim::rules

#endif  // TIM_SIGN_RULES_HPP_
