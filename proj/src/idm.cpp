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

#include "tim/idm.hpp"

#include "tim/error.hpp"
#include "tim/parallel.hpp"
#include "tim/simd/kernels.hpp"

#include <cmath>
#include <limits>
#include <random>

namespace tim::idm
{

namespace
{

constexpr double kDwellSpeed = 0.1;  // m/s
constexpr std::size_t kChunk = 512;

void require_positive(double x, const char * key)
{
  if (!std::isfinite(x) || x <= 0.0) {
    throw ConfigError(key, "must be finite and > 0");
  }
}

void require_range(const Range & r, const char * key)
{
  if (!std::isfinite(r.lo) || !std::isfinite(r.hi) || !(r.lo < r.hi) || r.lo <= 0.0) {
    throw ConfigError(key, "range must satisfy 0 < lo < hi");
  }
}

// 53 random bits mapped to [0, 1); identical on every platform, unlike
// std::uniform_real_distribution.
double unit(std::mt19937_64 & rng)
{
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double draw(std::mt19937_64 & rng, const Range & r)
{
  return r.lo + (r.hi - r.lo) * unit(rng);
}

simd::IdmCoefficients coefficients(const IdmParams & p)
{
  return {p.v0, p.T, p.a_max, p.b, p.s0, p.delta};
}

}  // namespace

void IdmParams::validate() const
{
  require_positive(v0, "idm.v0");
  require_positive(T, "idm.T");
  require_positive(a_max, "idm.a_max");
  require_positive(b, "idm.b");
  require_positive(s0, "idm.s0");
  require_positive(delta, "idm.delta");
}

double desired_gap(double v, const IdmParams & p)
{
  return p.s0 + v * p.T + v * v / (2.0 * std::sqrt(p.a_max * p.b));
}

double idm_accel(double v, double s, const IdmParams & p)
{
  if (!(s > 0.0)) {
    throw NonPositiveGap("gap to the stop line must be > 0, got " + std::to_string(s));
  }
  const double ratio = desired_gap(v, p) / s;
  const double free_term = v > 0.0 ? std::pow(v / p.v0, p.delta) : 0.0;
  return p.a_max * (1.0 - free_term - ratio * ratio);
}

double idm_accel_ds(double v, double s, const IdmParams & p)
{
  if (!(s > 0.0)) {
    throw NonPositiveGap("gap to the stop line must be > 0, got " + std::to_string(s));
  }
  const double gap = desired_gap(v, p);
  return 2.0 * p.a_max * gap * gap / (s * s * s);
}

Approach simulate_approach(double v_init, double s_init, const IdmParams & p, double dt,
                           std::size_t steps)
{
  if (!(dt > 0.0)) {
    throw ConfigError("idm.dt", "time step must be > 0");
  }
  Approach out;
  double v = v_init;
  double s = s_init;
  for (std::size_t k = 0; k < steps; ++k) {
    if (s <= p.s0 / 2.0) {
      break;
    }
    const double a = idm_accel(v, s, p);
    out.v.push_back(v);
    out.s.push_back(s);
    out.a.push_back(a);
    v = std::max(0.0, v + a * dt);
    s -= v * dt;
  }
  return out;
}

double rmse_accel(std::span<const double> observed, std::span<const double> modeled)
{
  if (observed.size() != modeled.size()) {
    throw LengthMismatch("rmse needs equal lengths, got " + std::to_string(observed.size()) +
                         " and " + std::to_string(modeled.size()));
  }
  if (observed.empty()) {
    throw EmptyInput("rmse of empty series");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    const double e = observed[i] - modeled[i];
    sum += e * e;
  }
  return std::sqrt(sum / static_cast<double>(observed.size()));
}

std::string_view to_string(Objective objective)
{
  return objective == Objective::Pooled ? "pooled" : "mean_per_trajectory";
}

void CalibrationSpec::validate() const
{
  require_range(v0, "calibration.v0");
  require_range(T, "calibration.T");
  require_range(a_max, "calibration.a_max");
  require_range(b, "calibration.b");
  require_range(s0, "calibration.s0");
  require_range(delta, "calibration.delta");
  if (n_samples < 1) {
    throw ConfigError("calibration.n_samples", "must be >= 1");
  }
  if (!(split > 0.0 && split < 1.0)) {
    throw ConfigError("calibration.split", "must lie in (0, 1)");
  }
}

Observations observations_from(const TrajectoryRecord & record, bool exclude_dwell)
{
  Observations o;
  for (const auto & row : record.rows) {
    if (!row.dist_to_stop_line || !(*row.dist_to_stop_line > 0.0)) {
      continue;
    }
    if (exclude_dwell && row.v < kDwellSpeed) {
      continue;
    }
    o.v.push_back(row.v);
    o.s.push_back(*row.dist_to_stop_line);
    o.a.push_back(row.a);
    o.log_v.push_back(row.v > 0.0 ? std::log(row.v) : 0.0);
  }
  return o;
}

double evaluate(std::span<const Observations> data, const IdmParams & p, Objective objective)
{
  const simd::IdmCoefficients c = coefficients(p);
  double total = 0.0;
  std::size_t count = 0;
  std::size_t used = 0;
  for (const auto & o : data) {
    if (o.v.empty()) {
      continue;
    }
    const double sse = simd::idm_sum_squared_error({o.v, o.s, o.a, o.log_v}, c);
    if (objective == Objective::Pooled) {
      total += sse;
      count += o.v.size();
    } else {
      total += std::sqrt(sse / static_cast<double>(o.v.size()));
      count += 1;
    }
    ++used;
  }
  if (used == 0) {
    return std::numeric_limits<double>::infinity();
  }
  const double value = objective == Objective::Pooled ? std::sqrt(total / static_cast<double>(count))
                                                      : total / static_cast<double>(count);
  return std::isnan(value) ? std::numeric_limits<double>::infinity() : value;
}

std::vector<IdmParams> draw_samples(const CalibrationSpec & spec)
{
  std::mt19937_64 rng(spec.seed);
  std::vector<IdmParams> out(spec.n_samples);
  for (auto & p : out) {
    p.v0 = draw(rng, spec.v0);
    p.T = draw(rng, spec.T);
    p.a_max = draw(rng, spec.a_max);
    p.b = draw(rng, spec.b);
    p.s0 = draw(rng, spec.s0);
    p.delta = draw(rng, spec.delta);
  }
  return out;
}

CalibrationResult calibrate(std::span<const TrajectoryRecord> calibration,
                            std::span<const TrajectoryRecord> validation,
                            const CalibrationSpec & spec, unsigned jobs)
{
  spec.validate();
  if (calibration.empty()) {
    throw EmptyInput("no calibration trajectories");
  }
  std::vector<Observations> cal;
  std::size_t usable = 0;
  for (const auto & r : calibration) {
    cal.push_back(observations_from(r, spec.exclude_dwell));
    usable += cal.back().v.size();
  }
  if (usable == 0) {
    throw AllSamplesInvalid("no calibration sample has a positive stop-line distance");
  }

  const std::vector<IdmParams> samples = draw_samples(spec);
  std::vector<double> score(samples.size());
  const std::size_t chunks = (samples.size() + kChunk - 1) / kChunk;
  parallel_for(chunks, jobs, [&](std::size_t c) {
    const std::size_t end = std::min(samples.size(), (c + 1) * kChunk);
    for (std::size_t i = c * kChunk; i < end; ++i) {
      score[i] = evaluate(cal, samples[i], spec.objective);
    }
  });

  std::size_t best = 0;
  for (std::size_t i = 1; i < score.size(); ++i) {
    if (score[i] < score[best]) {
      best = i;
    }
  }

  CalibrationResult result;
  result.best = samples[best];
  result.best_index = best;
  result.rmse_calibration = score[best];
  result.samples_used = usable;
  if (!validation.empty()) {
    std::vector<Observations> val;
    for (const auto & r : validation) {
      val.push_back(observations_from(r, spec.exclude_dwell));
    }
    const double v = evaluate(val, result.best, spec.objective);
    if (std::isfinite(v)) {
      result.rmse_validation = v;
    }
  }
  return result;
}

}  // namespace tim::idm
