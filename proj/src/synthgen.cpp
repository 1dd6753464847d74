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

#include "tim/synthgen.hpp"

#include "tim/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

namespace tim::synth
{

namespace
{

using Category = InteractionCategory;

constexpr double kPi = std::numbers::pi;
constexpr int kLightGo = 6;
constexpr int kLightCaution = 5;
constexpr int kLightStop = 4;

class Rng
{
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  std::size_t index(std::size_t lo, std::size_t hi)  // inclusive
  {
    return lo + static_cast<std::size_t>(uniform() * static_cast<double>(hi - lo + 1));
  }
  bool chance(double p) { return uniform() < p; }

  // Box-Muller; portable where std::normal_distribution is not.
  double normal()
  {
    if (spare_) {
      const double out = *spare_;
      spare_.reset();
      return out;
    }
    double u1 = uniform();
    while (u1 <= 0.0) {
      u1 = uniform();
    }
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    spare_ = r * std::sin(2.0 * kPi * u2);
    return r * std::cos(2.0 * kPi * u2);
  }

private:
  std::mt19937_64 engine_;
  std::optional<double> spare_;
};

// Normalised S-curve: trapezoidal acceleration with linear ramps over the first
// and last quarter.
double s_curve(double u)
{
  constexpr double r = 0.25;
  if (u <= 0.0) {
    return 0.0;
  }
  if (u >= 1.0) {
    return 1.0;
  }
  double area = 0.0;
  if (u < r) {
    area = u * u / (2.0 * r);
  } else if (u <= 1.0 - r) {
    area = r / 2.0 + (u - r);
  } else {
    area = (1.0 - r) - (1.0 - u) * (1.0 - u) / (2.0 * r);
  }
  return area / (1.0 - r);
}

struct Ramp
{
  double t0;
  double t1;
  double to;
};

// Speed held between ramps; ramps must be ordered and non-overlapping.
class SpeedProfile
{
public:
  explicit SpeedProfile(double initial) : initial_(initial) {}

  SpeedProfile & ramp(double t0, double t1, double to)
  {
    ramps_.push_back({t0, t1, to});
    return *this;
  }

  double at(double t) const
  {
    double v = initial_;
    for (const auto & r : ramps_) {
      if (t < r.t0) {
        return v;
      }
      if (t < r.t1) {
        return v + (r.to - v) * s_curve((t - r.t0) / (r.t1 - r.t0));
      }
      v = r.to;
    }
    return v;
  }

  std::vector<double> sample() const
  {
    std::vector<double> v(kSegmentSteps);
    for (std::size_t k = 0; k < kSegmentSteps; ++k) {
      v[k] = std::max(0.0, at(static_cast<double>(k) * kDt));
    }
    return v;
  }

private:
  double initial_;
  std::vector<Ramp> ramps_;
};

// Trapezoid-rule distance travelled up to each sample.
std::vector<double> travelled(const std::vector<double> & v)
{
  std::vector<double> s(v.size(), 0.0);
  for (std::size_t k = 1; k < v.size(); ++k) {
    s[k] = s[k - 1] + 0.5 * (v[k - 1] + v[k]) * kDt;
  }
  return s;
}

// Straights and circular arcs from the origin heading +x; continues straight
// past its end.
class Path
{
public:
  Path & straight(double length)
  {
    pieces_.push_back({length, 0.0});
    return *this;
  }
  Path & arc(double radius, bool left)
  {
    pieces_.push_back({0.5 * kPi * radius, (left ? 1.0 : -1.0) / radius});
    return *this;
  }

  Vec2 at(double s) const
  {
    Vec2 p{0.0, 0.0};
    double heading = 0.0;
    for (const auto & piece : pieces_) {
      const double len = std::min(s, piece.length);
      if (piece.curvature == 0.0) {
        p = p + len * Vec2{std::cos(heading), std::sin(heading)};
      } else {
        const double r = 1.0 / piece.curvature;
        const double h1 = heading + len * piece.curvature;
        p = p + Vec2{r * (std::sin(h1) - std::sin(heading)), -r * (std::cos(h1) - std::cos(heading))};
        heading = h1;
      }
      s -= len;
      if (s <= 0.0) {
        return p;
      }
    }
    return p + s * Vec2{std::cos(heading), std::sin(heading)};
  }

private:
  struct Piece
  {
    double length;
    double curvature;  // signed, 1/m; 0 for a straight
  };
  std::vector<Piece> pieces_;
};

struct Scene
{
  std::vector<double> speed;
  std::vector<Vec2> position;
  std::vector<TrafficLightTrack> lights;
  std::vector<Vec2> signs;
};

std::vector<Vec2> trace(const Path & path, const std::vector<double> & s)
{
  std::vector<Vec2> out;
  out.reserve(s.size());
  for (double d : s) {
    out.push_back(path.at(d));
  }
  return out;
}

std::vector<int> constant_states(int code)
{
  return std::vector<int>(kSegmentSteps, code);
}

// Green, then caution for 3 s, then stop; switching `lead` seconds before the
// vehicle starts braking.
std::vector<int> stop_states(double brake_start)
{
  std::vector<int> states(kSegmentSteps, kLightStop);
  const double caution_start = std::max(0.0, brake_start - 1.0);
  for (std::size_t k = 0; k < kSegmentSteps; ++k) {
    const double t = static_cast<double>(k) * kDt;
    if (t < caution_start) {
      states[k] = kLightGo;
    } else if (t < caution_start + 3.0) {
      states[k] = kLightCaution;
    }
  }
  return states;
}

Scene light_stop(const ScenarioSpec & spec, Rng & rng)
{
  const double v0 = spec.approach_speed;
  const double t_dec = std::clamp(v0 / 2.0, 2.0, 6.5);
  const double t_d = 1.5 + rng.uniform() * (6.5 - t_dec);
  Scene sc;
  sc.speed = SpeedProfile(v0).ramp(t_d, t_d + t_dec, 0.0).sample();
  const auto s = travelled(sc.speed);
  Path path;
  path.straight(s.back());
  sc.position = trace(path, s);
  // stop line ahead of the stopped vehicle, within reach of the 20 % extension
  const double reach = 0.2 * s.back() - 0.5;
  const double gap = rng.uniform(std::min(1.0, reach), std::min(4.0, reach));
  sc.lights.push_back({path.at(s.back() + gap), stop_states(t_d)});
  return sc;
}

Scene light_straight(const ScenarioSpec & spec, Rng & rng)
{
  const double v0 = spec.approach_speed;
  const double t0 = rng.uniform(0.5, 4.0);
  Scene sc;
  sc.speed = SpeedProfile(v0).ramp(t0, t0 + rng.uniform(2.0, 4.0), v0 * rng.uniform(0.85, 1.15)).sample();
  const auto s = travelled(sc.speed);
  Path path;
  path.straight(s.back());
  sc.position = trace(path, s);
  const std::size_t c = rng.index(25, 50);
  sc.lights.push_back({sc.position[c], constant_states(kLightGo)});
  return sc;
}

Scene light_turn(const ScenarioSpec & spec, Rng & rng, bool left)
{
  const double v0 = spec.approach_speed;
  const std::size_t c = rng.index(20, 40);
  const double t_cross = static_cast<double>(c) * kDt;
  const double v_turn = std::max(3.0, v0 * rng.uniform(0.6, 0.9));
  const double t1 = t_cross + rng.uniform(0.0, 1.0);
  const double t0 = std::max(0.2, t1 - rng.uniform(1.5, 2.5));
  Scene sc;
  sc.speed = SpeedProfile(v0).ramp(t0, t1, v_turn).sample();
  const auto s = travelled(sc.speed);
  const double entry = rng.uniform(1.5, 4.0);
  const double after = s.back() - s[c];
  const double radius =
    std::clamp(0.45 * (after - entry) / (0.5 * kPi), 4.0, std::max(4.0, 0.5 * spec.intersection_scale));
  Path path;
  path.straight(s[c] + entry).arc(radius, left);
  sc.position = trace(path, s);
  sc.lights.push_back({sc.position[c], constant_states(left ? 3 : kLightGo)});
  return sc;
}

struct SignStop
{
  std::vector<double> speed;
  std::vector<double> s;
  double stop_at;  // distance of the stop position
};

// Approach, brake to a standstill, dwell, pull away to `v_exit`.
SignStop sign_stop_profile(double v0, Rng & rng)
{
  const double t_dec = std::clamp(v0 / 3.0, 1.2, 3.0);
  const double t_d0 = std::max(rng.uniform(0.3, 0.8), (8.0 - v0 * t_dec / 2.0) / v0);
  const double t_s = t_d0 + t_dec;
  const double t_go = t_s + rng.uniform(1.2, 1.6);
  const double v_exit = rng.uniform(5.0, 7.0);
  SignStop out;
  out.speed = SpeedProfile(v0).ramp(t_d0, t_s, 0.0).ramp(t_go, t_go + 2.5, v_exit).sample();
  out.s = travelled(out.speed);
  out.stop_at = out.s[static_cast<std::size_t>(std::ceil(t_s / kDt))];
  return out;
}

// Initial nearest sign: at the kerb on the right, level with the stop position.
Vec2 kerb_sign(double stop_at, Rng & rng)
{
  return {stop_at + rng.uniform(0.0, 0.5), -rng.uniform(1.2, 1.8)};
}

Scene sign_four_way(const ScenarioSpec & spec, Rng & rng)
{
  SignStop p = sign_stop_profile(spec.approach_speed, rng);
  Path path;
  path.straight(p.s.back());
  Scene sc;
  sc.speed = p.speed;
  sc.position = trace(path, p.s);
  const Vec2 mu = kerb_sign(p.stop_at, rng);
  const double side = spec.intersection_scale;
  auto square = [&](Vec2 corner) {
    sc.signs.push_back(corner);
    sc.signs.push_back(corner + Vec2{side, 0.0});
    sc.signs.push_back(corner + Vec2{side, side});
    sc.signs.push_back(corner + Vec2{0.0, side});
  };
  square(mu);
  if (rng.chance(0.4)) {
    square(mu + Vec2{180.0, 0.0});
  }
  return sc;
}

Scene sign_turn(const ScenarioSpec & spec, Rng & rng, bool left)
{
  SignStop p = sign_stop_profile(spec.approach_speed, rng);
  const double entry = rng.uniform(0.5, 1.5);
  const double after = p.s.back() - p.stop_at;
  const double min_r = left ? 4.0 : 3.0;
  const double radius = std::clamp(0.45 * (after - entry) / (0.5 * kPi), min_r,
                                   std::max(min_r, 0.5 * spec.intersection_scale));
  Path path;
  path.straight(p.stop_at + entry).arc(radius, left);
  Scene sc;
  sc.speed = p.speed;
  sc.position = trace(path, p.s);
  const Vec2 mu = kerb_sign(p.stop_at, rng);
  sc.signs.push_back(mu);
  if (rng.chance(0.5)) {
    sc.signs.push_back(mu + Vec2{spec.intersection_scale, spec.intersection_scale});
  }
  return sc;
}

Scene sign_left_two_step(const ScenarioSpec & spec, Rng & rng)
{
  const double v0 = spec.approach_speed;
  const double t_dec = std::clamp(v0 / 2.5, 1.2, 2.4);
  const double t_s = 3.0;
  const double t_go1 = rng.uniform(3.8, 4.2);
  const double v_mid = rng.uniform(3.5, 5.0);
  const double t_go2 = rng.uniform(7.8, 8.0);
  Scene sc;
  sc.speed = SpeedProfile(v0)
               .ramp(t_s - t_dec, t_s, 0.0)
               .ramp(t_go1, t_go1 + 1.5, v_mid)
               .ramp(t_go1 + 1.5, t_go1 + 3.0, 0.0)
               .ramp(t_go2, 9.0, rng.uniform(2.5, 3.5))
               .sample();
  const auto s = travelled(sc.speed);
  const double stop_at = s[static_cast<std::size_t>(std::ceil(t_s / kDt))];
  const double entry = rng.uniform(1.0, 2.0);
  const double radius =
    std::clamp(0.45 * (s.back() - stop_at - entry) / (0.5 * kPi), 3.0,
               std::max(3.0, 0.5 * spec.intersection_scale));
  Path path;
  path.straight(stop_at + entry).arc(radius, true);
  sc.position = trace(path, s);
  const Vec2 mu = kerb_sign(stop_at, rng);
  sc.signs.push_back(mu);
  if (rng.chance(0.5)) {
    sc.signs.push_back(mu + Vec2{spec.intersection_scale, spec.intersection_scale});
  }
  return sc;
}

Scene no_interaction(const ScenarioSpec & spec, Rng & rng)
{
  const double v0 = spec.approach_speed;
  const double t0 = rng.uniform(0.5, 5.0);
  Scene sc;
  sc.speed = SpeedProfile(v0).ramp(t0, t0 + rng.uniform(2.0, 3.5), v0 * rng.uniform(0.7, 1.3)).sample();
  const auto s = travelled(sc.speed);
  Path path;
  path.straight(s.back());
  sc.position = trace(path, s);
  return sc;
}

std::string scene_id(const ScenarioSpec & spec)
{
  std::ostringstream id;
  id << "syn_" << to_string(spec.category) << '_' << spec.seed;
  return id.str();
}

}  // namespace

std::uint64_t mix_seed(std::uint64_t x)
{
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

SpeedRange approach_speed_range(InteractionCategory category)
{
  switch (category) {
    case Category::LightStop:
      return {3.0, 18.0};
    case Category::LightStraight:
      return {4.0, 20.0};
    case Category::LightLeftTurn:
    case Category::LightRightTurn:
      return {4.0, 12.0};
    case Category::SignFourWay:
    case Category::SignRightTurn:
    case Category::SignLeftOneStep:
      return {3.0, 12.0};
    case Category::SignLeftTwoStep:
      return {3.0, 8.0};
    case Category::None:
      break;
  }
  return {1.5, 30.0};
}

LabeledSegment generate(const ScenarioSpec & spec)
{
  const SpeedRange range = approach_speed_range(spec.category);
  if (!(spec.approach_speed >= range.lo && spec.approach_speed <= range.hi)) {
    std::ostringstream msg;
    msg << to_string(spec.category) << ": approach speed " << spec.approach_speed
        << " m/s outside the feasible range [" << range.lo << ", " << range.hi << "]";
    throw InfeasibleSpec(msg.str());
  }
  if (!(spec.noise_sigma_speed >= 0.0) || !(spec.noise_sigma_pos >= 0.0)) {
    throw InfeasibleSpec("noise sigmas must be >= 0");
  }
  if (!(spec.intersection_scale >= kMinScale && spec.intersection_scale <= kMaxScale)) {
    throw InfeasibleSpec("intersection scale must lie in [10, 40] m");
  }

  Rng rng(mix_seed(spec.seed ^ (static_cast<std::uint64_t>(spec.category) << 56)));
  Scene sc;
  switch (spec.category) {
    case Category::LightStop:
      sc = light_stop(spec, rng);
      break;
    case Category::LightStraight:
      sc = light_straight(spec, rng);
      break;
    case Category::LightLeftTurn:
      sc = light_turn(spec, rng, true);
      break;
    case Category::LightRightTurn:
      sc = light_turn(spec, rng, false);
      break;
    case Category::SignFourWay:
      sc = sign_four_way(spec, rng);
      break;
    case Category::SignRightTurn:
      sc = sign_turn(spec, rng, false);
      break;
    case Category::SignLeftOneStep:
      sc = sign_turn(spec, rng, true);
      break;
    case Category::SignLeftTwoStep:
      sc = sign_left_two_step(spec, rng);
      break;
    case Category::None:
      sc = no_interaction(spec, rng);
      break;
  }

  // place the local frame somewhere in the world
  const double phi = rng.uniform(0.0, 2.0 * kPi);
  const Vec2 shift{rng.uniform(-1000.0, 1000.0), rng.uniform(-1000.0, 1000.0)};
  const double c = std::cos(phi);
  const double s = std::sin(phi);
  auto place = [&](Vec2 p) { return Vec2{c * p.x - s * p.y, s * p.x + c * p.y} + shift; };

  LabeledSegment out;
  out.label = spec.category;
  Segment & seg = out.segment;
  seg.id = scene_id(spec);
  for (std::size_t k = 0; k < kSegmentSteps; ++k) {
    TimeStep st;
    st.index = static_cast<int>(k) + 1;
    st.position = place(sc.position[k]);
    st.speed = sc.speed[k];
    if (spec.noise_sigma_speed > 0.0) {
      st.speed = std::max(0.0, st.speed + spec.noise_sigma_speed * rng.normal());
    }
    if (spec.noise_sigma_pos > 0.0) {
      st.position.x += spec.noise_sigma_pos * rng.normal();
      st.position.y += spec.noise_sigma_pos * rng.normal();
    }
    seg.steps.push_back(st);
  }
  for (auto & l : sc.lights) {
    seg.lights.push_back({place(l.stop_line), l.states});
  }
  for (const Vec2 & p : sc.signs) {
    seg.signs.push_back({place(p)});
  }
  return out;
}

ScenarioSpec sample_spec(InteractionCategory category, std::uint64_t seed)
{
  Rng rng(mix_seed(seed + 0x5bd1e995ULL * (static_cast<std::uint64_t>(category) + 1)));
  const SpeedRange range = approach_speed_range(category);
  ScenarioSpec spec;
  spec.category = category;
  spec.approach_speed = rng.uniform(range.lo, range.hi);
  spec.intersection_scale = rng.uniform(14.0, 24.0);
  spec.seed = seed;
  return spec;
}

std::vector<ScenarioSpec> balanced_specs(std::size_t per_category, std::uint64_t seed,
                                         bool include_none)
{
  std::vector<ScenarioSpec> out;
  for (InteractionCategory c : kAllCategories) {
    if (c == Category::None && !include_none) {
      continue;
    }
    for (std::size_t i = 0; i < per_category; ++i) {
      out.push_back(sample_spec(c, seed * 1000003ULL + i));
    }
  }
  return out;
}

void inject_speed_anomalies(std::vector<double> & speeds, const AnomalySpec & spec)
{
  if (speeds.size() < 7) {
    return;
  }
  Rng rng(mix_seed(spec.seed));
  std::vector<std::size_t> used;
  auto pick = [&] {
    for (int attempt = 0; attempt < 1000; ++attempt) {
      const std::size_t k = rng.index(3, speeds.size() - 4);
      const bool clear = std::none_of(used.begin(), used.end(), [&](std::size_t u) {
        return (u > k ? u - k : k - u) < 5;
      });
      if (clear) {
        used.push_back(k);
        return k;
      }
    }
    return std::size_t{0};
  };
  auto spike = [&](double height) {
    const std::size_t k = pick();
    if (k == 0) {
      return;
    }
    const bool down = rng.chance(0.5) && speeds[k] >= height;
    speeds[k] += down ? -height : height;
  };
  for (std::size_t i = 0; i < spec.accel_spikes; ++i) {
    spike(spec.accel_peak * 2.0 * kDt);
  }
  for (std::size_t i = 0; i < spec.jerk_spikes; ++i) {
    spike(spec.jerk_peak * 2.0 * kDt * kDt);
  }
}

}  // namespace tim::synth
