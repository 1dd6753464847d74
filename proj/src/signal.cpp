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

#include "tim/signal.hpp"

#include "tim/error.hpp"

namespace tim::signal
{

std::vector<double> differentiate(std::span<const double> v, double dt)
{
  const std::size_t n = v.size();
  if (n < 2) {
    throw TooShort("differentiate needs at least 2 samples, got " + std::to_string(n));
  }
  std::vector<double> d(n);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    d[i] = (v[i + 1] - v[i - 1]) / (2.0 * dt);
  }
  if (n >= 4) {
    d[0] = (-11.0 * v[0] + 18.0 * v[1] - 9.0 * v[2] + 2.0 * v[3]) / (6.0 * dt);
    d[n - 1] = (11.0 * v[n - 1] - 18.0 * v[n - 2] + 9.0 * v[n - 3] - 2.0 * v[n - 4]) / (6.0 * dt);
  } else {
    d[0] = (v[1] - v[0]) / dt;
    d[n - 1] = (v[n - 1] - v[n - 2]) / dt;
  }
  return d;
}

TrajectoryRecord denoise_trajectory(const TrajectoryRecord & record, const DenoiseConfig & config)
{
  const std::vector<double> speed = dwt_denoise(record.speeds(), config);
  const std::vector<double> accel = config.denoise_acceleration
                                      ? dwt_denoise(record.accelerations(), config)
                                      : differentiate(speed);
  TrajectoryRecord out = record;
  for (std::size_t i = 0; i < out.rows.size(); ++i) {
    out.rows[i].v = speed[i];
    out.rows[i].a = accel[i];
  }
  return out;
}

}  // namespace tim::signal
