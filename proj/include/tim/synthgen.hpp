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

// Labelled synthetic segments for every interaction category.
//
// Scenes are laid out in a local frame (travel along +x, left is +y), then
// rotated and translated by seed-derived amounts. Speed profiles are built
// from constant-jerk ramps; positions integrate the speed along a path of
// straights and circular arcs, so noiseless scenes are kinematically consistent.

#ifndef TIM_SYNTHGEN_HPP_
#define TIM_SYNTHGEN_HPP_

#include "tim/types.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace tim::synth
{

struct ScenarioSpec
{
  InteractionCategory category{InteractionCategory::None};
  double approach_speed{8.0};       // m/s
  double intersection_scale{18.0};  // m; four-way square side, twice the largest turn radius
  double noise_sigma_speed{0.0};    // m/s
  double noise_sigma_pos{0.0};      // m
  std::uint64_t seed{0};
};

struct SpeedRange
{
  double lo;
  double hi;
};

/// Approach speeds for which a noiseless scene satisfies its rule chain.
SpeedRange approach_speed_range(InteractionCategory category);

inline constexpr double kMinScale = 10.0;
inline constexpr double kMaxScale = 40.0;

struct LabeledSegment
{
  Segment segment;
  InteractionCategory label;
};

/// Throws InfeasibleSpec for speeds outside approach_speed_range, negative
/// noise, or a scale outside [kMinScale, kMaxScale].
LabeledSegment generate(const ScenarioSpec & spec);

/// Noiseless spec with seed-derived feasible speed and scale.
ScenarioSpec sample_spec(InteractionCategory category, std::uint64_t seed);

/// `per_category` specs for each of the eight interaction categories (and
/// None when asked), category-major.
std::vector<ScenarioSpec> balanced_specs(std::size_t per_category, std::uint64_t seed,
                                         bool include_none = false);

/// Speed spikes of the kind raw sensor data shows. A spike of height h at
/// sample k moves the centred-difference acceleration by +-h/(2 dt) at k-1
/// and k+1, and the jerk by about h/(2 dt^2) at k.
struct AnomalySpec
{
  std::size_t accel_spikes{2};
  std::size_t jerk_spikes{2};
  double accel_peak{10.0};  // m/s^2 reached by an acceleration spike
  double jerk_peak{20.0};   // m/s^3 reached by a jerk spike (acceleration stays in band)
  std::uint64_t seed{0};
};

/// Adds spikes at distinct interior samples; speeds stay >= 0.
void inject_speed_anomalies(std::vector<double> & speeds, const AnomalySpec & spec);

/// splitmix64 step, used to derive independent seeds.
std::uint64_t mix_seed(std::uint64_t x);

}  // namespace tim::synth

#endif  // TIM_SYNTHGEN_HPP_
