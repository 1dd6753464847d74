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

#ifndef TIM_TYPES_HPP_
#define TIM_TYPES_HPP_

#include <array>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace tim
{

/// Samples per segment (9.1 s at 10 Hz).
inline constexpr std::size_t kSegmentSteps = 91;
/// Sampling interval in seconds.
inline constexpr double kDt = 0.1;
/// Traffic-light state codes are 0 (unknown) .. 8 (flashing yellow).
inline constexpr int kMaxLightState = 8;

/// Number of samples covering `seconds` at the segment cadence.
inline std::size_t samples_for(double seconds)
{
  return static_cast<std::size_t>(std::llround(seconds / kDt));
}

/// 2-D point or vector in a locally planar metric frame.
struct Vec2
{
  double x{0.0};
  double y{0.0};

  friend constexpr Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Vec2 operator*(double k, Vec2 a) { return {k * a.x, k * a.y}; }
  friend constexpr Vec2 operator*(Vec2 a, double k) { return {k * a.x, k * a.y}; }
  friend constexpr bool operator==(Vec2 a, Vec2 b) = default;

  double norm() const { return std::hypot(x, y); }
  constexpr double squared_norm() const { return x * x + y * y; }
};

inline double distance(Vec2 a, Vec2 b) { return (a - b).norm(); }
constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }

struct TimeStep
{
  int index{0};  // 1-based
  Vec2 position;
  double speed{0.0};

  friend bool operator==(const TimeStep &, const TimeStep &) = default;
};

/// Light track; `stop_line` is the light's position (the start of the intersection lane).
struct TrafficLightTrack
{
  Vec2 stop_line;
  std::vector<int> states;

  friend bool operator==(const TrafficLightTrack &, const TrafficLightTrack &) = default;
};

struct StopSign
{
  Vec2 position;

  friend bool operator==(const StopSign &, const StopSign &) = default;
};

struct Segment
{
  std::string id;
  std::vector<TimeStep> steps;
  std::vector<TrafficLightTrack> lights;
  std::vector<StopSign> signs;

  std::vector<Vec2> positions() const;
  std::vector<double> speeds() const;

  friend bool operator==(const Segment &, const Segment &) = default;
};

enum class InteractionCategory {
  LightStop,
  LightLeftTurn,
  LightRightTurn,
  LightStraight,
  SignFourWay,
  SignRightTurn,
  SignLeftOneStep,
  SignLeftTwoStep,
  None,
};

inline constexpr std::array<InteractionCategory, 9> kAllCategories = {
  InteractionCategory::LightStop,       InteractionCategory::LightLeftTurn,
  InteractionCategory::LightRightTurn,  InteractionCategory::LightStraight,
  InteractionCategory::SignFourWay,     InteractionCategory::SignRightTurn,
  InteractionCategory::SignLeftOneStep, InteractionCategory::SignLeftTwoStep,
  InteractionCategory::None,
};

std::string_view to_string(InteractionCategory category);
std::optional<InteractionCategory> category_from_string(std::string_view name);
bool is_light_category(InteractionCategory category);
bool is_sign_category(InteractionCategory category);

/// One organized row; optional fields are absent context, never zero.
struct TrajectoryRow
{
  int index{0};
  double x{0.0};
  double y{0.0};
  double v{0.0};
  double a{0.0};
  std::optional<int> light_state;
  std::optional<double> dist_to_stop_line;
  std::optional<double> dist_to_sign;

  friend bool operator==(const TrajectoryRow &, const TrajectoryRow &) = default;
};

struct TrajectoryRecord
{
  std::string segment_id;
  InteractionCategory category{InteractionCategory::None};
  std::optional<Vec2> stop_line;
  std::optional<Vec2> initial_sign;
  std::vector<TrajectoryRow> rows;

  std::vector<double> speeds() const;
  std::vector<double> accelerations() const;
  std::vector<Vec2> positions() const;

  friend bool operator==(const TrajectoryRecord &, const TrajectoryRecord &) = default;
};

/// Thresholds of the traffic-light rules. Defaults are the shipped values.
struct LightRuleParams
{
  double l_move{1.0};         // s
  double d_pass{0.1};         // m
  int d_poly{6};
  double p_extend{0.2};       // fraction of travelled length
  double v_stop_light{1.0};   // m/s
  double l_begin{1.0};        // s
  double l_end{1.0};          // s
  double d_stop{5.0};         // m
  double l_extend{2.0};       // s
  double eta_left{0.3};
  double eta_right{-0.3};
  double eta_through_1{0.1};
  double eta_through_2{-0.1};

  /// Throws ConfigError naming the first violated constraint.
  void validate() const;

  friend bool operator==(const LightRuleParams &, const LightRuleParams &) = default;
};

/// Where the stop-sign stop area is centered.
enum class StopAreaCenter {
  NearestTrajectoryPoint,  // AV location nearest to the initial nearest sign
  SignPosition,            // the sign itself
};

struct SignRuleParams
{
  double r_stop{5.0};         // m
  double l_stop{0.5};         // s
  double v_stop_sign{0.5};    // m/s
  double delta_t_stop{1.0};   // s
  double eta_left_sign{0.3};
  double eta_right_sign{-0.3};
  double dbscan_eps{28.0};    // m
  int dbscan_min_pts{2};
  StopAreaCenter stop_area_center{StopAreaCenter::NearestTrajectoryPoint};

  void validate() const;

  friend bool operator==(const SignRuleParams &, const SignRuleParams &) = default;
};

}  // namespace tim

#endif  // TIM_TYPES_HPP_
