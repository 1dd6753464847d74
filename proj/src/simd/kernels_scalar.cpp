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

#include "tim/simd/kernels.hpp"

#include <cmath>
#include <limits>

namespace tim::simd::scalar
{

namespace
{

double horner(std::span<const double> c, double w)
{
  double acc = 0.0;
  for (std::size_t j = c.size(); j-- > 0;) {
    acc = acc * w + c[j];
  }
  return acc;
}

}  // namespace

double poly_path_min_sq_distance(const PolyPathSamples & path, double tx, double ty)
{
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < path.count; ++k) {
    const double w = path.w0 + static_cast<double>(k) * path.dw;
    const double dx = horner(path.cx, w) - tx;
    const double dy = horner(path.cy, w) - ty;
    const double d2 = dx * dx + dy * dy;
    if (d2 < best) {
      best = d2;
    }
  }
  return best;
}

double idm_sum_squared_error(const IdmObservations & obs, const IdmCoefficients & p)
{
  const double braking = 2.0 * std::sqrt(p.a_max * p.b);
  double sum = 0.0;
  for (std::size_t i = 0; i < obs.v.size(); ++i) {
    const double v = obs.v[i];
    const double desired_gap = p.s0 + v * p.time_headway + v * v / braking;
    const double ratio = desired_gap / obs.s[i];
    const double free_term = v > 0.0 ? std::pow(v / p.v0, p.delta) : 0.0;
    const double model = p.a_max * (1.0 - free_term - ratio * ratio);
    const double e = model - obs.a[i];
    sum += e * e;
  }
  return sum;
}

}  // namespace tim::simd::scalar
