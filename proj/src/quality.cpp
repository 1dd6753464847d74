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

#include "tim/quality.hpp"

#include "tim/error.hpp"
#include "tim/signal.hpp"

namespace tim::quality
{

namespace
{

double out_of_band_pct(std::span<const double> x, double lo, double hi)
{
  if (x.empty()) {
    return 0.0;
  }
  std::size_t bad = 0;
  for (double v : x) {
    bad += (v < lo || v > hi) ? 1 : 0;
  }
  return 100.0 * static_cast<double>(bad) / static_cast<double>(x.size());
}

}  // namespace

void QualityThresholds::validate() const
{
  if (!(accel_min < accel_max)) {
    throw ConfigError("quality.accel_min", "must be < accel_max");
  }
  if (!(jerk_min < jerk_max)) {
    throw ConfigError("quality.jerk_min", "must be < jerk_max");
  }
  if (samples_for(window) < 2) {
    throw ConfigError("quality.window", "must span at least two samples");
  }
  if (max_inversions_per_window < 0) {
    throw ConfigError("quality.max_inversions_per_window", "must be >= 0");
  }
}

double anomaly_acceleration_pct(std::span<const double> a, const QualityThresholds & t)
{
  return out_of_band_pct(a, t.accel_min, t.accel_max);
}

double anomaly_jerk_pct(std::span<const double> j, const QualityThresholds & t)
{
  return out_of_band_pct(j, t.jerk_min, t.jerk_max);
}

double anomaly_inversion_pct(std::span<const double> j, const QualityThresholds & t)
{
  const std::size_t w = samples_for(t.window);
  if (j.size() < w || w == 0) {
    throw TooShort("inversion metric needs at least " + std::to_string(w) + " samples");
  }
  const std::size_t windows = j.size() - w + 1;
  std::size_t flagged = 0;
  for (std::size_t start = 0; start < windows; ++start) {
    int changes = 0;
    int last = 0;
    for (std::size_t k = start; k < start + w; ++k) {
      const int s = j[k] > 0.0 ? 1 : (j[k] < 0.0 ? -1 : 0);
      if (s == 0) {
        continue;
      }
      if (last != 0 && s != last) {
        ++changes;
      }
      last = s;
    }
    flagged += changes > t.max_inversions_per_window ? 1 : 0;
  }
  return 100.0 * static_cast<double>(flagged) / static_cast<double>(windows);
}

QualityReport quality_report(const TrajectoryRecord & record, const QualityThresholds & t)
{
  const std::vector<double> a = record.accelerations();
  const std::vector<double> j = signal::differentiate(a);
  return {anomaly_acceleration_pct(a, t), anomaly_jerk_pct(j, t), anomaly_inversion_pct(j, t)};
}

}  // namespace tim::quality
