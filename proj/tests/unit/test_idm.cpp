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

#include "support/oracles.hpp"
#include "tim/error.hpp"
#include "tim/idm.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>

using namespace tim;
using namespace tim::idm;

TEST_CASE("equilibria")
{
  const IdmParams p;
  CHECK(idm_accel(0.0, p.s0, p) == 0.0);
  CHECK(std::abs(idm_accel(p.v0, std::numeric_limits<double>::max(), p)) <= 1e-12);
}

TEST_CASE("formula with the shipped parameters")
{
  const IdmParams p;
  const double s_star = 4.83 + 5.0 * 2.17 + 25.0 / (2.0 * std::sqrt(0.25 * 2.31));
  const double expected = 0.25 * (1.0 - std::pow(5.0 / 10.11, 4.96) - (s_star / 30.0) * (s_star / 30.0));
  CHECK(desired_gap(5.0, p) == doctest::Approx(s_star).epsilon(1e-15));
  CHECK(idm_accel(5.0, 30.0, p) == doctest::Approx(expected).epsilon(1e-14));
  CHECK_THROWS_AS(idm_accel(5.0, 0.0, p), NonPositiveGap);
  CHECK_THROWS_AS(idm_accel(5.0, -1.0, p), NonPositiveGap);
}

TEST_CASE("sign structure and monotonicity in the gap")
{
  const IdmParams p;
  for (double v = 0.0; v <= 20.0; v += 0.5) {
    double prev = -std::numeric_limits<double>::infinity();
    for (double s = 0.5; s <= 200.0; s *= 1.3) {
      const double a = idm_accel(v, s, p);
      CHECK(a < p.a_max);
      if (s < desired_gap(v, p)) {
        CHECK(a < 0.0);
      }
      CHECK(a > prev);
      prev = a;
    }
  }
}

TEST_CASE("analytic gap derivative matches finite differences")
{
  const IdmParams p;
  for (double v : {0.0, 2.0, 7.5, 14.0}) {
    for (double s : {3.0, 10.0, 40.0, 90.0}) {
      const double h = 1e-5 * s;
      const double fd = (idm_accel(v, s + h, p) - idm_accel(v, s - h, p)) / (2.0 * h);
      CHECK(std::abs(fd - idm_accel_ds(v, s, p)) <= 1e-4 * std::abs(idm_accel_ds(v, s, p)));
    }
  }
}

TEST_CASE("simulated approaches")
{
  const IdmParams p;
  const Approach still = simulate_approach(0.0, p.s0, p, 0.1, 91);
  for (double v : still.v) {
    CHECK(v == 0.0);
  }
  const Approach stop = simulate_approach(8.0, 60.0, p, 0.1, 91);
  CHECK(stop.v.size() <= 91);
  CHECK(stop.v.back() < stop.v.front());
  CHECK(stop.s.back() > 0.0);
  for (std::size_t k = 1; k < stop.s.size(); ++k) {
    CHECK(stop.s[k] <= stop.s[k - 1]);
  }

  IdmParams lazy = p;
  lazy.a_max = 1e-6;
  const Approach coast = simulate_approach(8.0, 1e6, lazy, 0.1, 91);
  CHECK(std::abs(coast.v.back() - 8.0) <= lazy.a_max * 9.1);
}

TEST_CASE("rmse")
{
  const std::vector<double> a = {1, 2, 3};
  CHECK(rmse_accel(a, a) == 0.0);
  CHECK(rmse_accel(a, std::vector<double>{1.5, 2.5, 3.5}) == doctest::Approx(0.5));
  CHECK(rmse_accel(a, std::vector<double>{1, 2, 5}) == doctest::Approx(std::sqrt(4.0 / 3.0)));
  CHECK_THROWS_AS(rmse_accel(a, std::vector<double>{1, 2}), LengthMismatch);
  CHECK_THROWS_AS(rmse_accel(std::vector<double>{}, std::vector<double>{}), EmptyInput);
}

TEST_CASE("model data evaluate to zero error under the generating parameters")
{
  const IdmParams p;
  const auto records = oracle::idm_generated_records(p, 5, 3);
  std::vector<Observations> obs;
  for (const auto & r : records) {
    obs.push_back(observations_from(r, false));
  }
  CHECK(evaluate(obs, p, Objective::Pooled) <= 1e-12);
  CHECK(evaluate(obs, p, Objective::MeanPerTrajectory) <= 1e-12);
}

TEST_CASE("observations skip rows without a positive gap and optionally dwell")
{
  TrajectoryRecord r;
  for (int i = 0; i < 4; ++i) {
    TrajectoryRow row;
    row.index = i + 1;
    row.v = i == 2 ? 0.05 : 3.0;
    row.a = -0.5;
    if (i != 0) {
      row.dist_to_stop_line = i == 3 ? 0.0 : 10.0;
    }
    r.rows.push_back(row);
  }
  CHECK(observations_from(r, false).v.size() == 2);
  CHECK(observations_from(r, true).v.size() == 1);
}

TEST_CASE("calibration with a single sample returns that sample")
{
  const auto records = oracle::idm_generated_records(IdmParams{}, 3, 8);
  CalibrationSpec spec;
  spec.n_samples = 1;
  const auto r = calibrate(records, {}, spec, 1);
  CHECK(r.best == draw_samples(spec).front());
  CHECK(r.best_index == 0);
  CHECK_FALSE(r.rmse_validation.has_value());
}

TEST_CASE("calibration is deterministic across worker counts and finds a good fit")
{
  const auto records = oracle::idm_generated_records(IdmParams{}, 6, 21);
  CalibrationSpec spec;
  spec.n_samples = 4000;
  const auto one = calibrate(records, records, spec, 1);
  const auto many = calibrate(records, records, spec, 8);
  CHECK(one.best == many.best);
  CHECK(one.best_index == many.best_index);
  CHECK(one.rmse_calibration == many.rmse_calibration);
  CHECK(one.rmse_validation == many.rmse_validation);
  CHECK(one.rmse_calibration >= 0.0);

  CalibrationSpec other = spec;
  other.seed += 1;
  CHECK(calibrate(records, {}, other, 1).best_index < spec.n_samples);
  CHECK(calibrate(records, {}, spec, 2).best == one.best);
}

TEST_CASE("draws stay inside the ranges")
{
  CalibrationSpec spec;
  spec.n_samples = 2000;
  for (const IdmParams & p : draw_samples(spec)) {
    CHECK(p.v0 >= spec.v0.lo);
    CHECK(p.v0 < spec.v0.hi);
    CHECK(p.delta >= spec.delta.lo);
    CHECK(p.delta < spec.delta.hi);
    CHECK(p.s0 >= spec.s0.lo);
    CHECK(p.s0 < spec.s0.hi);
  }
}

TEST_CASE("calibration errors")
{
  const CalibrationSpec spec;
  CHECK_THROWS_AS(calibrate({}, {}, spec, 1), EmptyInput);
  TrajectoryRecord empty_gap;
  empty_gap.rows.resize(91);
  const std::vector<TrajectoryRecord> useless = {empty_gap};
  CHECK_THROWS_AS(calibrate(useless, {}, spec, 1), AllSamplesInvalid);
  IdmParams bad;
  bad.b = 0.0;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  CalibrationSpec bad_spec;
  bad_spec.v0 = {5.0, 1.0};
  CHECK_THROWS_AS(bad_spec.validate(), ConfigError);
}
