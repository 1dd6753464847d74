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

// Intelligent Driver Model approaching a static stop line, and its
// Monte-Carlo calibration against recorded stop trajectories.

#ifndef TIM_IDM_HPP_
#define TIM_IDM_HPP_

#include "tim/types.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace tim::idm
{

struct IdmParams
{
  double v0{10.11};    // desired speed, m/s
  double T{2.17};      // desired time headway, s
  double a_max{0.25};  // m/s^2
  double b{2.31};      // comfortable deceleration, m/s^2
  double s0{4.83};     // minimum gap, m
  double delta{4.96};  // acceleration exponent

  /// Throws ConfigError unless all six are finite and > 0.
  void validate() const;

  friend bool operator==(const IdmParams &, const IdmParams &) = default;
};

/// s* = s0 + v T + v^2 / (2 sqrt(a_max b)); the closing speed equals v.
double desired_gap(double v, const IdmParams & p);

/// a = a_max [1 - (v/v0)^delta - (s*/s)^2]. Throws NonPositiveGap for s <= 0.
double idm_accel(double v, double s, const IdmParams & p);

/// Analytic da/ds = 2 a_max s*^2 / s^3.
double idm_accel_ds(double v, double s, const IdmParams & p);

struct Approach
{
  std::vector<double> v;  // m/s
  std::vector<double> s;  // m, gap to the stop line
  std::vector<double> a;  // model acceleration at (v, s)
};

/// Explicit Euler: v += a dt (clamped at 0), s -= v dt. Produces at most
/// `steps` samples, starting with the initial state, and stops early once
/// s <= s0 / 2.
Approach simulate_approach(double v_init, double s_init, const IdmParams & p, double dt,
                           std::size_t steps);

/// sqrt(mean((observed - modeled)^2)); LengthMismatch on unequal sizes,
/// EmptyInput on empty series.
double rmse_accel(std::span<const double> observed, std::span<const double> modeled);

struct Range
{
  double lo;
  double hi;

  friend bool operator==(const Range &, const Range &) = default;
};

enum class Objective {
  Pooled,             // RMSE over all samples of all trajectories
  MeanPerTrajectory,  // mean of per-trajectory RMSEs
};

std::string_view to_string(Objective objective);

struct CalibrationSpec
{
  Range v0{1.0, 30.0};
  Range T{0.1, 5.0};
  Range a_max{0.05, 5.0};
  Range b{0.1, 8.0};
  Range s0{0.1, 10.0};
  Range delta{1.0, 10.0};
  std::size_t n_samples{100000};
  std::uint64_t seed{20240501};
  bool exclude_dwell{false};  // drop samples with v < 0.1 m/s
  Objective objective{Objective::Pooled};
  double split{15.0 / 19.0};  // share of trajectories used for calibration

  void validate() const;

  friend bool operator==(const CalibrationSpec &, const CalibrationSpec &) = default;
};

/// Usable (v, s, a) triples of one trajectory.
struct Observations
{
  std::vector<double> v;
  std::vector<double> s;
  std::vector<double> a;
  std::vector<double> log_v;
};

/// Rows with a known positive stop-line distance (and, when excluding dwell,
/// v >= 0.1 m/s).
Observations observations_from(const TrajectoryRecord & record, bool exclude_dwell);

/// Objective value of `p`; +inf when no observation is usable.
double evaluate(std::span<const Observations> data, const IdmParams & p, Objective objective);

struct CalibrationResult
{
  IdmParams best;
  double rmse_calibration{0.0};
  std::optional<double> rmse_validation;
  std::size_t best_index{0};
  std::size_t samples_used{0};  // observations in the calibration set
};

/// Draws spec.n_samples parameter vectors uniformly from the ranges with a
/// seeded generator and keeps the one with the smallest objective (lowest
/// index on ties). The result does not depend on `jobs`.
/// Throws EmptyInput for no trajectories, AllSamplesInvalid when none has a
/// usable sample.
CalibrationResult calibrate(std::span<const TrajectoryRecord> calibration,
                            std::span<const TrajectoryRecord> validation,
                            const CalibrationSpec & spec, unsigned jobs = 1);

/// Every parameter vector calibrate evaluates for `spec`, in draw order.
std::vector<IdmParams> draw_samples(const CalibrationSpec & spec);

}  // namespace tim::idm

#endif  // TIM_IDM_HPP_
