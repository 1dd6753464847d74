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

#include "tim/error.hpp"
#include "tim/signal.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <random>

using namespace tim;
using namespace tim::signal;

namespace
{

nlohmann::json golden()
{
  std::ifstream in(TIM_ORACLE_DIR "/pywt_golden.json");
  REQUIRE(in.good());
  return nlohmann::json::parse(in);
}

double rms(const std::vector<double> & a, const std::vector<double> & b)
{
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    s += (a[i] - b[i]) * (a[i] - b[i]);
  }
  return std::sqrt(s / static_cast<double>(a.size()));
}

std::vector<double> random_series(std::uint64_t seed, double lo = -10, double hi = 10)
{
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> x(kSegmentSteps);
  for (double & v : x) {
    v = u(rng);
  }
  return x;
}

}  // namespace

TEST_CASE("differentiate examples")
{
  const std::vector<double> c(91, 3.0);
  for (double v : differentiate(c)) {
    CHECK(v == 0.0);
  }
  std::vector<double> ramp(91);
  for (std::size_t i = 0; i < ramp.size(); ++i) {
    ramp[i] = 0.2 * static_cast<double>(i);
  }
  for (double v : differentiate(ramp)) {
    CHECK(v == doctest::Approx(2.0).epsilon(1e-12));
  }
  std::vector<double> s(91);
  double worst = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    s[i] = std::sin(0.1 * static_cast<double>(i));
  }
  const auto d = differentiate(s);
  for (std::size_t i = 0; i < s.size(); ++i) {
    worst = std::max(worst, std::abs(d[i] - std::cos(0.1 * static_cast<double>(i))));
  }
  CHECK(worst <= 2e-3);
  CHECK_THROWS_AS(differentiate(std::vector<double>{1.0}), TooShort);
  CHECK(differentiate(std::vector<double>{1.0, 2.0}) == std::vector<double>{10.0, 10.0});
}

TEST_CASE("filters match PyWavelets")
{
  const auto g = golden();
  for (const auto & c : g["cases"]) {
    const Wavelet & w = wavelet(c["wavelet"].get<std::string>());
    const auto lo = c["dec_lo"].get<std::vector<double>>();
    const auto hi = c["dec_hi"].get<std::vector<double>>();
    REQUIRE(w.dec_lo.size() == lo.size());
    for (std::size_t k = 0; k < lo.size(); ++k) {
      CHECK(w.dec_lo[k] == doctest::Approx(lo[k]).epsilon(1e-12));
      CHECK(w.dec_hi[k] == doctest::Approx(hi[k]).epsilon(1e-12));
    }
  }
  CHECK(wavelet("haar").dec_lo == wavelet("db1").dec_lo);
  CHECK_THROWS_AS(wavelet("sym4"), ConfigError);
}

TEST_CASE("max level matches PyWavelets")
{
  const auto g = golden();
  for (const auto & [name, level] : g["max_level_91"].items()) {
    CHECK(dwt_max_level(91, wavelet(name).length()) == level.get<int>());
  }
  CHECK(dwt_max_level(5, 12) == 0);
}

TEST_CASE("wavedec matches PyWavelets symmetric mode")
{
  const auto g = golden();
  const auto x = g["signal"].get<std::vector<double>>();
  for (const auto & c : g["cases"]) {
    const Wavelet & w = wavelet(c["wavelet"].get<std::string>());
    const auto coeffs = wavedec(x, w, c["level"].get<int>());
    const auto expected = c["coeffs"].get<std::vector<std::vector<double>>>();
    REQUIRE(coeffs.size() == expected.size());
    for (std::size_t b = 0; b < coeffs.size(); ++b) {
      REQUIRE(coeffs[b].size() == expected[b].size());
      for (std::size_t k = 0; k < coeffs[b].size(); ++k) {
        CHECK(coeffs[b][k] == doctest::Approx(expected[b][k]).epsilon(1e-10));
      }
    }
  }
}

TEST_CASE("symmetric zero-detail reconstruction matches PyWavelets")
{
  const auto g = golden();
  const auto x = g["signal"].get<std::vector<double>>();
  const auto expected = g["zero_detail_db6_l2_symmetric"].get<std::vector<double>>();
  DenoiseConfig c;
  c.boundary = Boundary::Symmetric;
  const auto y = dwt_denoise(x, c);
  REQUIRE(y.size() == expected.size());
  for (std::size_t k = 0; k < y.size(); ++k) {
    CHECK(y[k] == doctest::Approx(expected[k]).epsilon(1e-10));
  }
}

TEST_CASE("perfect reconstruction at every depth")
{
  for (const char * name : {"db1", "db4", "db6", "db10"}) {
    const Wavelet & w = wavelet(name);
    const auto x = random_series(7);
    for (int level = 1; level <= dwt_max_level(x.size(), w.length()); ++level) {
      const auto y = waverec(wavedec(x, w, level), w, x.size());
      REQUIRE(y.size() == x.size());
      for (std::size_t k = 0; k < x.size(); ++k) {
        CHECK(std::abs(y[k] - x[k]) < 1e-8);
      }
    }
  }
}

TEST_CASE("constants survive denoising")
{
  for (Boundary b : {Boundary::Consistent, Boundary::Symmetric}) {
    DenoiseConfig c;
    c.boundary = b;
    for (int level = 1; level <= 3; ++level) {
      c.levels = level;
      for (double v : dwt_denoise(std::vector<double>(91, 10.0), c)) {
        CHECK(std::abs(v - 10.0) < 1e-9);
      }
    }
  }
}

TEST_CASE("denoising reduces noise on a ramp and is idempotent")
{
  std::mt19937_64 rng(11);
  std::normal_distribution<double> noise(0.0, 0.3);
  std::vector<double> clean(91);
  std::vector<double> noisy(91);
  for (std::size_t i = 0; i < 91; ++i) {
    clean[i] = 2.0 + 0.05 * static_cast<double>(i);
    noisy[i] = clean[i] + noise(rng);
  }
  const DenoiseConfig c;
  const auto once = dwt_denoise(noisy, c);
  CHECK(rms(once, clean) < rms(noisy, clean));
  CHECK(rms(dwt_denoise(once, c), once) < 1e-6);
}

TEST_CASE("zeroing details does not add energy about the mean")
{
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto x = random_series(seed);
    const auto y = dwt_denoise(x, DenoiseConfig{});
    auto energy = [](const std::vector<double> & s) {
      double m = 0.0;
      for (double v : s) {
        m += v / static_cast<double>(s.size());
      }
      double e = 0.0;
      for (double v : s) {
        e += (v - m) * (v - m);
      }
      return e;
    };
    CHECK(energy(y) <= energy(x) + 1e-9);
  }
}

TEST_CASE("denoise errors")
{
  DenoiseConfig c;
  c.levels = 4;
  CHECK_THROWS_AS(dwt_denoise(random_series(1), c), ConfigInfeasible);
  c.levels = 0;
  CHECK_THROWS_AS(dwt_denoise(random_series(1), c), ConfigInfeasible);
  CHECK_THROWS_AS(dwt_denoise(std::vector<double>(8, 1.0), DenoiseConfig{}), TooShort);
}

namespace
{

TrajectoryRecord record_from(const std::vector<double> & v)
{
  TrajectoryRecord r;
  r.segment_id = "r";
  r.category = InteractionCategory::LightStop;
  r.stop_line = Vec2{5, 5};
  const auto a = differentiate(v);
  for (std::size_t i = 0; i < v.size(); ++i) {
    TrajectoryRow row;
    row.index = static_cast<int>(i) + 1;
    row.x = static_cast<double>(i);
    row.y = -static_cast<double>(i);
    row.v = v[i];
    row.a = a[i];
    row.light_state = 4;
    row.dist_to_stop_line = 3.0;
    r.rows.push_back(row);
  }
  return r;
}

}  // namespace

TEST_CASE("denoise_trajectory keeps context and re-derives acceleration")
{
  std::vector<double> v(91);
  for (std::size_t i = 0; i < 91; ++i) {
    v[i] = 8.0 - 0.08 * static_cast<double>(i);
  }
  v[40] += 1.2;  // a +6 m/s^2 outlier in the raw acceleration
  const TrajectoryRecord raw = record_from(v);
  const TrajectoryRecord out = denoise_trajectory(raw, DenoiseConfig{});
  REQUIRE(out.rows.size() == raw.rows.size());
  const auto a = differentiate(out.speeds());
  for (std::size_t i = 0; i < out.rows.size(); ++i) {
    CHECK(out.rows[i].x == raw.rows[i].x);
    CHECK(out.rows[i].y == raw.rows[i].y);
    CHECK(out.rows[i].light_state == raw.rows[i].light_state);
    CHECK(out.rows[i].dist_to_stop_line == raw.rows[i].dist_to_stop_line);
    CHECK(out.rows[i].a == a[i]);
    CHECK(out.rows[i].a >= -8.0);
    CHECK(out.rows[i].a <= 5.0);
  }
  CHECK(out.stop_line == raw.stop_line);
  CHECK(out.segment_id == raw.segment_id);
}

TEST_CASE("smooth and constant records barely change")
{
  std::vector<double> v(91);
  for (std::size_t i = 0; i < 91; ++i) {
    v[i] = 6.0 + 2.0 * std::sin(0.03 * static_cast<double>(i));
  }
  const auto out = denoise_trajectory(record_from(v), DenoiseConfig{});
  const double rel = rms(out.speeds(), v) / rms(v, std::vector<double>(91, 0.0));
  CHECK(rel < 0.01);

  const auto flat = denoise_trajectory(record_from(std::vector<double>(91, 7.5)), DenoiseConfig{});
  for (double s : flat.speeds()) {
    CHECK(std::abs(s - 7.5) < 1e-9);
  }
}

TEST_CASE("acceleration can be denoised on its own")
{
  std::vector<double> v(91);
  for (std::size_t i = 0; i < 91; ++i) {
    v[i] = 5.0 + ((i % 2) ? 0.1 : -0.1);
  }
  DenoiseConfig c;
  c.denoise_acceleration = true;
  const TrajectoryRecord raw = record_from(v);
  const auto out = denoise_trajectory(raw, c);
  const auto expected = dwt_denoise(raw.accelerations(), c);
  for (std::size_t i = 0; i < 91; ++i) {
    CHECK(out.rows[i].a == expected[i]);
  }
}
