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

#ifndef TIM_CLASSIFY_HPP_
#define TIM_CLASSIFY_HPP_

#include "tim/light_rules.hpp"
#include "tim/sign_rules.hpp"
#include "tim/types.hpp"

namespace tim
{

struct Classification
{
  InteractionCategory category{InteractionCategory::None};
  rules::LightClassification light;
  rules::SignClassification sign;  // only evaluated when the light rules give None
};

/// Light rules first; sign rules only when no light category applies.
Classification classify(const Segment & segment, const LightRuleParams & light,
                        const SignRuleParams & sign);

/// Organized per-step record. Acceleration is the derivative of speed; the
/// light state and stop-line distance come from the influencing light, the sign
/// distance from the initial nearest sign. Context that does not apply is null.
TrajectoryRecord organize(const Segment & segment, const Classification & classification);

}  // namespace tim

#endif  // TIM_CLASSIFY_HPP_
