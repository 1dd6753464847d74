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

// Acceptance run: one PASS/FAIL line per criterion; exit status 1 if any fails.

#include "support/oracles.hpp"
#include "tim/classify.hpp"
#include "tim/dbscan.hpp"
#include "tim/geometry.hpp"
#include "tim/idm.hpp"
#include "tim/io/config.hpp"
#include "tim/quality.hpp"
#include "tim/signal.hpp"
#include "tim/synthgen.hpp"

#include <unistd.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <random>
#include <sstream>

namespace
{

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;
using tim::InteractionCategory;

int failures = 0;

void verdict(int id, bool pass, const std::string & what)
{
  std::cout << (pass ? "PASS" : "FAIL") << "  [" << id << "] " << what << std::endl;
  failures += pass ? 0 : 1;
}

double seconds_since(Clock::time_point t)
{
  return std::chrono::duration<double>(Clock::now() - t).count();
}

std::string num(double v, int precision = 3)
{
  std::ostringstream s;
  s.setf(std::ios::fixed);
  s.precision(precision);
  s << v;
  return s.str();
}

std::string sci(double v)
{
  std::ostringstream s;
  s.setf(std::ios::scientific);
  s.precision(2);
  s << v;
  return s.str();
}

class Uniform
{
public:
  explicit Uniform(std::uint64_t seed) : rng_(seed) {}
  double operator()(double lo, double hi)
  {
    return lo + (hi - lo) * static_cast<double>(rng_() >> 11) * 0x1.0p-53;
  }
  std::uint64_t raw() { return rng_(); }

private:
  std::mt19937_64 rng_;
};

void classifier_round_trip()
{
  const auto start = Clock::now();
  const tim::LightRuleParams light;
  const tim::SignRuleParams sign;
  std::size_t correct = 0;
  std::size_t total = 0;
  for (const auto & spec : tim::synth::balanced_specs(25, 2024, false)) {
    const auto scene = tim::synth::generate(spec);
    correct += tim::classify(scene.segment, light, sign).category == scene.label ? 1 : 0;
    ++total;
  }
  const double t = seconds_since(start);
  verdict(1, total == 200 && correct == total && t < 5.0,
          "classifier round-trip: " + std::to_string(correct) + "/" + std::to_string(total) +
            " labels recovered in " + num(t) + " s (need 200/200, < 5 s)");
}

void enhancement_effect()
{
  const tim::quality::QualityThresholds qt;
  const tim::signal::DenoiseConfig dc;
  const tim::LightRuleParams light;
  const tim::SignRuleParams sign;
  double accel_after = 0.0;
  double jerk_after = 0.0;
  double accel_before = 0.0;
  double jerk_before = 0.0;
  double inv_before = 0.0;
  double inv_after = 0.0;
  constexpr int kCount = 100;
  for (int i = 0; i < kCount; ++i) {
    const InteractionCategory cat = tim::kAllCategories[static_cast<std::size_t>(i % 8)];
    auto spec = tim::synth::sample_spec(cat, 500 + static_cast<std::uint64_t>(i));
    spec.noise_sigma_speed = 0.05;
    spec.noise_sigma_pos = 0.02;
    const auto scene = tim::synth::generate(spec);
    tim::TrajectoryRecord rec =
      tim::organize(scene.segment, tim::classify(scene.segment, light, sign));
    std::vector<double> v = rec.speeds();
    tim::synth::AnomalySpec as;
    as.seed = 9000 + static_cast<std::uint64_t>(i);
    tim::synth::inject_speed_anomalies(v, as);
    const std::vector<double> a = tim::signal::differentiate(v);
    for (std::size_t k = 0; k < rec.rows.size(); ++k) {
      rec.rows[k].v = v[k];
      rec.rows[k].a = a[k];
    }
    const auto before = tim::quality::quality_report(rec, qt);
    const auto after = tim::quality::quality_report(tim::signal::denoise_trajectory(rec, dc), qt);
    accel_before += before.anomaly_accel_pct / kCount;
    jerk_before += before.anomaly_jerk_pct / kCount;
    inv_before += before.anomaly_inversion_pct / kCount;
    accel_after += after.anomaly_accel_pct / kCount;
    jerk_after += after.anomaly_jerk_pct / kCount;
    inv_after += after.anomaly_inversion_pct / kCount;
  }
  const double drop = inv_before - inv_after;
  verdict(2, accel_after == 0.0 && jerk_after == 0.0 && drop >= 25.0,
          "enhancement on 100 noisy spiked trajectories: accel " + num(accel_before, 2) + "% -> " +
            num(accel_after, 2) + "%, jerk " + num(jerk_before, 2) + "% -> " + num(jerk_after, 2) +
            "%, inversion " + num(inv_before, 2) + "% -> " + num(inv_after, 2) + "% (drop " +
            num(drop, 2) + " points; need 0.00, 0.00, drop >= 25)");
}

void geometry_oracles()
{
  Uniform u(31);
  int quad_mismatch = 0;
  int convex_seen = 0;
  for (int i = 0; i < 1000; ++i) {
    std::array<tim::Vec2, 4> q;
    for (auto & p : q) {
      // half continuous, half on a small grid so collinear and coincident cases occur
      p = i < 500 ? tim::Vec2{u(-50, 50), u(-50, 50)}
                  : tim::Vec2{std::floor(u(0, 5)), std::floor(u(0, 5))};
    }
    const bool expected = tim::oracle::convex_position(q);
    convex_seen += expected ? 1 : 0;
    quad_mismatch += tim::geometry::convex_quadrilateral(q) != expected ? 1 : 0;
  }
  int mirror_fail = 0;
  const auto light_t = tim::geometry::TurnThresholds::for_light(tim::LightRuleParams{});
  const auto sign_t = tim::geometry::TurnThresholds::for_sign(tim::SignRuleParams{});
  auto mirrored = [](tim::geometry::Turn t) {
    using tim::geometry::Turn;
    return t == Turn::Left ? Turn::Right : t == Turn::Right ? Turn::Left : t;
  };
  for (int i = 0; i < 1000; ++i) {
    const tim::Vec2 a{u(-30, 30), u(-30, 30)};
    const tim::Vec2 b{u(-30, 30), u(-30, 30)};
    const tim::Vec2 c{u(-30, 30), u(-30, 30)};
    auto m = [](tim::Vec2 p) { return tim::Vec2{p.x, -p.y}; };
    const double eta = tim::geometry::turn_measure(a, b, c);
    const double eta_m = tim::geometry::turn_measure(m(a), m(b), m(c));
    const bool ok = eta_m == -eta &&
                    tim::geometry::turn_direction(m(a), m(b), m(c), light_t) ==
                      mirrored(tim::geometry::turn_direction(a, b, c, light_t)) &&
                    tim::geometry::turn_direction(m(a), m(b), m(c), sign_t) ==
                      mirrored(tim::geometry::turn_direction(a, b, c, sign_t));
    mirror_fail += ok ? 0 : 1;
  }
  verdict(3, quad_mismatch == 0 && mirror_fail == 0,
          "geometry oracles: convex quad " + std::to_string(quad_mismatch) +
            " disagreements / 1000 (" + std::to_string(convex_seen) + " convex), turn mirror " +
            std::to_string(mirror_fail) + " failures / 1000 (need 0 and 0)");
}

void dbscan_oracle()
{
  Uniform u(47);
  const double eps_values[] = {5.0, 28.0, 50.0};
  int mismatches = 0;
  int clusters = 0;
  for (int i = 0; i < 500; ++i) {
    const auto n = static_cast<std::size_t>(1 + u.raw() % 50);
    const double eps = eps_values[i % 3];
    const int min_pts = 2 + (i / 3) % 2;
    const double extent = u(20.0, 300.0);
    std::vector<tim::Vec2> pts(n);
    for (auto & p : pts) {
      p = {u(0, extent), u(0, extent)};
    }
    const auto got = tim::clustering::dbscan(pts, eps, min_pts);
    clusters += got.cluster_count;
    mismatches += got.labels != tim::oracle::reference_dbscan(pts, eps, min_pts) ? 1 : 0;
  }
  verdict(4, mismatches == 0,
          "DBSCAN vs quadratic reference: " + std::to_string(mismatches) +
            " partition mismatches / 500 sets (" + std::to_string(clusters) + " clusters; need 0)");
}

void dwt_contract()
{
  Uniform u(53);
  const auto & w = tim::signal::wavelet("db6");
  const int levels = tim::signal::dwt_max_level(tim::kSegmentSteps, w.length());
  double recon_err = 0.0;
  double const_err = 0.0;
  double idem_rms = 0.0;
  tim::signal::DenoiseConfig dc;
  for (int i = 0; i < 100; ++i) {
    std::vector<double> x(tim::kSegmentSteps);
    for (double & v : x) {
      v = u(-10, 10);
    }
    const auto y = tim::signal::waverec(tim::signal::wavedec(x, w, levels), w, x.size());
    for (std::size_t k = 0; k < x.size(); ++k) {
      recon_err = std::max(recon_err, std::abs(y[k] - x[k]));
    }
    const double c = u(-30, 30);
    const std::vector<double> constant(tim::kSegmentSteps, c);
    for (double v : tim::signal::dwt_denoise(constant, dc)) {
      const_err = std::max(const_err, std::abs(v - c));
    }
    const auto once = tim::signal::dwt_denoise(x, dc);
    const auto twice = tim::signal::dwt_denoise(once, dc);
    double ss = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
      ss += (twice[k] - once[k]) * (twice[k] - once[k]);
    }
    idem_rms = std::max(idem_rms, std::sqrt(ss / static_cast<double>(x.size())));
  }
  verdict(5, recon_err <= 1e-8 && const_err <= 1e-9 && idem_rms <= 1e-6,
          "DWT contract on 100 series: reconstruction " + sci(recon_err) + " (<= 1e-8), constant " +
            sci(const_err) + " (<= 1e-9), idempotence RMS " + sci(idem_rms) + " (<= 1e-6)");
}

void idm_correctness()
{
  const tim::idm::IdmParams p;
  const double eq_standstill = std::abs(tim::idm::idm_accel(0.0, p.s0, p));
  const double eq_free = std::abs(tim::idm::idm_accel(p.v0, std::numeric_limits<double>::max(), p));
  Uniform u(61);
  double worst_rel = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double v = u(0.0, 20.0);
    const double s = u(2.0, 120.0);
    const double h = 1e-5 * s;
    const double fd = (tim::idm::idm_accel(v, s + h, p) - tim::idm::idm_accel(v, s - h, p)) / (2.0 * h);
    const double an = tim::idm::idm_accel_ds(v, s, p);
    worst_rel = std::max(worst_rel, std::abs(fd - an) / std::abs(an));
  }

  const auto records = tim::oracle::idm_generated_records(p, 19, 71);
  const std::vector<tim::TrajectoryRecord> cal(records.begin(), records.begin() + 15);
  const std::vector<tim::TrajectoryRecord> val(records.begin() + 15, records.end());
  tim::idm::CalibrationSpec spec;  // 100,000 samples over the default ranges
  const auto start = Clock::now();
  const auto result = tim::idm::calibrate(cal, val, spec, 0);
  const double t = seconds_since(start);

  verdict(6, eq_standstill <= 1e-12 && eq_free <= 1e-12 && worst_rel <= 1e-4 &&
               result.rmse_calibration <= 0.05 && t < 60.0,
          "IDM: equilibria " + sci(eq_standstill) + ", " + sci(eq_free) + " (<= 1e-12); da/ds rel err " +
            sci(worst_rel) + " (<= 1e-4); recovery RMSE " + num(result.rmse_calibration, 4) +
            " m/s^2 with " + std::to_string(spec.n_samples) + " samples in " + num(t, 2) +
            " s (need <= 0.05, < 60 s)");
}

std::string slurp(const fs::path & p)
{
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

int run(const std::string & cmd)
{
  return std::system(cmd.c_str());
}

void determinism()
{
  const fs::path root = fs::temp_directory_path() / ("tim_acceptance_" + std::to_string(::getpid()));
  fs::remove_all(root);
  fs::create_directories(root);
  const std::string cli = TIM_CLI_PATH;
  bool ok = run("'" + cli + "' synth --out '" + (root / "scenes").string() +
                "' --per-category 25 --seed 11 > /dev/null") == 0;
  for (const char * jobs : {"1", "8"}) {
    const fs::path dir = root / (std::string("jobs") + jobs);
    fs::create_directories(dir);
    // same relative paths in both runs, so manifests can match byte for byte
    const std::string cd = "cd '" + dir.string() + "' && ";
    const std::string j = std::string(" --jobs ") + jobs;
    ok = ok && run(cd + "'" + cli + "' extract ../scenes --out out" + j + " > /dev/null 2>&1") == 0;
    ok = ok && run(cd + "'" + cli + "' enhance out" + j + " > /dev/null 2>&1") == 0;
    ok = ok && run(cd + "'" + cli + "' calibrate out" + j + " > /dev/null 2>&1") == 0;
  }
  std::size_t files = 0;
  std::size_t differing = 0;
  if (ok) {
    std::vector<fs::path> a;
    std::vector<fs::path> b;
    for (const auto & e : fs::recursive_directory_iterator(root / "jobs1" / "out")) {
      if (e.is_regular_file()) {
        a.push_back(fs::relative(e.path(), root / "jobs1" / "out"));
      }
    }
    for (const auto & e : fs::recursive_directory_iterator(root / "jobs8" / "out")) {
      if (e.is_regular_file()) {
        b.push_back(fs::relative(e.path(), root / "jobs8" / "out"));
      }
    }
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    files = a.size();
    if (a != b) {
      differing = std::max(a.size(), b.size());
    } else {
      for (const auto & rel : a) {
        differing += slurp(root / "jobs1" / "out" / rel) != slurp(root / "jobs8" / "out" / rel) ? 1 : 0;
      }
    }
  }
  fs::remove_all(root);
  verdict(7, ok && files > 0 && differing == 0,
          "determinism: extract+enhance+calibrate on 200 scenes, --jobs 1 vs --jobs 8: " +
            std::to_string(differing) + " of " + std::to_string(files) +
            " output files differ" + (ok ? "" : " (a command failed)") + " (need 0)");
}

void table_defaults()
{
  ::unsetenv("TIM_CONFIG");
  const fs::path empty = fs::temp_directory_path() / ("tim_empty_" + std::to_string(::getpid()) + ".ini");
  { std::ofstream(empty) << ""; }
  const tim::io::ParamBundle from_file = tim::io::load_params(empty);
  fs::remove(empty);
  const tim::io::ParamBundle from_nothing = tim::io::load_params(std::nullopt);

  int mismatches = 0;
  auto check = [&](double got, double want) { mismatches += got == want ? 0 : 1; };
  for (const auto * b : {&from_file, &from_nothing}) {
    const auto & l = b->light;
    check(l.l_move, 1.0);
    check(l.d_pass, 0.1);
    check(l.d_poly, 6);
    check(l.p_extend, 0.2);
    check(l.v_stop_light, 1.0);
    check(l.l_begin, 1.0);
    check(l.l_end, 1.0);
    check(l.d_stop, 5.0);
    check(l.l_extend, 2.0);
    check(l.eta_left, 0.3);
    check(l.eta_right, -0.3);
    check(l.eta_through_1, 0.1);
    check(l.eta_through_2, -0.1);
    const auto & s = b->sign;
    check(s.r_stop, 5.0);
    check(s.l_stop, 0.5);
    check(s.v_stop_sign, 0.5);
    check(s.delta_t_stop, 1.0);
    check(s.eta_left_sign, 0.3);
    check(s.eta_right_sign, -0.3);
    check(s.dbscan_eps, 28.0);
    check(s.dbscan_min_pts, 2);
  }
  verdict(8, mismatches == 0,
          "parameter defaults from an empty config and from no config: " + std::to_string(mismatches) +
            " of 42 default fields differ (need 0)");
}

}  // namespace

int main()
{
  classifier_round_trip();
  enhancement_effect();
  geometry_oracles();
  dbscan_oracle();
  dwt_contract();
  idm_correctness();
  determinism();
  table_defaults();
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed")
            << std::endl;
  return failures == 0 ? 0 : 1;
}
