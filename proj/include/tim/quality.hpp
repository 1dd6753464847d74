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

#ifndef TIM_QUALITY_HPP_
#define TIM_QUALITY_HPP_

#include "tim/types.hpp"

#include <span>

namespace tim::quality
{

/// Closed normal bands and the jerk sign-inversion limit.
struct QualityThresholds
{
  double accel_min{-8.0};   // m/s^2
  double accel_max{5.0};
  double jerk_min{-15.0};   // m/s^3
  double jerk_max{15.0};
  double window{1.0};       // s
  int max_inversions_per_window{1};

  void validate() const;

  friend bool operator==(const QualityThresholds &, const QualityThresholds &) = default;
};

/// Percentages in [0, 100].
struct QualityReport
{
  double anomaly_accel_pct{0.0};
  double anomaly_jerk_pct{0.0};
  double anomaly_inversion_pct{0.0};
};

double anomaly_acceleration_pct(std::span<const double> a, const QualityThresholds & t);
double anomaly_jerk_pct(std::span<const double> j, const QualityThresholds & t);

/// Share of sliding windows (stride one sample) holding more than
/// max_inversions_per_window sign changes. Zeros carry no sign and are skipped.
/// Throws TooShort when the series is shorter than one window.
double anomaly_inversion_pct(std::span<const double> j, const QualityThresholds & t);

/// Jerk is the derivative of the record's own acceleration column.
QualityReport quality_report(const TrajectoryRecord & record, const QualityThresholds & t);

}  // namespace tim::quality

#endif  // TIM_QUALITY_HPP_
