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

#include "tim/classify.hpp"

#include "tim/signal.hpp"

namespace tim
{

Classification classify(const Segment & segment, const LightRuleParams & light,
                        const SignRuleParams & sign)
{
  Classification out;
  out.light = rules::classify_light_interaction(segment, light);
  if (out.light.category != InteractionCategory::None) {
    out.category = out.light.category;
    return out;
  }
  out.sign = rules::classify_sign_interaction(segment, sign);
  out.category = out.sign.category;
  return out;
}

TrajectoryRecord organize(const Segment & segment, const Classification & classification)
{
  TrajectoryRecord record;
  record.segment_id = segment.id;
  record.category = classification.category;
  const TrafficLightTrack * light = nullptr;
  if (is_light_category(classification.category) && classification.light.influencing_light) {
    light = &*classification.light.influencing_light;
    record.stop_line = light->stop_line;
  }
  if (is_sign_category(classification.category) && classification.sign.initial_nearest_sign) {
    record.initial_sign = classification.sign.initial_nearest_sign->position;
  }

  const std::vector<double> accel = signal::differentiate(segment.speeds());
  record.rows.reserve(segment.steps.size());
  for (std::size_t i = 0; i < segment.steps.size(); ++i) {
    const TimeStep & s = segment.steps[i];
    TrajectoryRow row;
    row.index = s.index;
    row.x = s.position.x;
    row.y = s.position.y;
    row.v = s.speed;
    row.a = accel[i];
    if (light != nullptr) {
      if (i < light->states.size()) {
        row.light_state = light->states[i];
      }
      row.dist_to_stop_line = distance(s.position, light->stop_line);
    }
    if (record.initial_sign) {
      row.dist_to_sign = distance(s.position, *record.initial_sign);
    }
    record.rows.push_back(row);
  }
  return record;
}

}  // namespace tim
