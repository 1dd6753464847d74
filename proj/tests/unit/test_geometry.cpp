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
#include "tim/geometry.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>

using namespace tim;
using namespace tim::geometry;

namespace
{

std::vector<Vec2> line_points(std::size_t n, double slope, double step = 0.5)
{
  std::vector<Vec2> pts;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = step * static_cast<double>(i);
    pts.push_back({x, slope * x});
  }
  return pts;
}

}  // namespace

TEST_CASE("cross2")
{
  CHECK(cross2({1, 0}, {0, 1}) == 1.0);
  CHECK(cross2({0, 1}, {0, 2}) == 0.0);
  CHECK(cross2({3, 4}, {-2, 5}) == 23.0);
  CHECK(cross2({3, 4}, {-2, 5}) == -cross2({-2, 5}, {3, 4}));
}

TEST_CASE("fit reproduces a line and extends it")
{
  const auto pts = line_points(91, 2.0);
  const FittedPath path = fit_and_extend(pts, 6, 0.2);
  for (double u = 0.0; u <= 1.2; u += 0.01) {
    const Vec2 p = path.at(u);
    CHECK(std::abs(p.y - 2.0 * p.x) < 1e-6);
  }
  const Vec2 end = path.at(1.2);
  const double length = distance(pts.front(), pts.back());
  CHECK(distance(pts.front(), end) == doctest::Approx(1.2 * length).epsilon(1e-9));
}

TEST_CASE("fit of a stationary trajectory is degenerate")
{
  const std::vector<Vec2> same(91, Vec2{3, 4});
  CHECK_THROWS_AS(fit_and_extend(same, 6, 0.2), DegenerateFit);
  // six distinct positions are one short of a degree-6 fit
  std::vector<Vec2> few(91, Vec2{0, 0});
  for (std::size_t i = 0; i < 5; ++i) {
    few[86 + i] = {static_cast<double>(i + 1), 0.0};
  }
  CHECK_THROWS_AS(fit_and_extend(few, 6, 0.2), DegenerateFit);
  CHECK_NOTHROW(fit_and_extend(few, 5, 0.2));
}

TEST_CASE("passes_point on the span and on the extension")
{
  const auto pts = line_points(91, 0.0);  // x in [0, 45]
  const FittedPath path = fit_and_extend(pts, 6, 0.2);
  CHECK(passes_point(path, {20.0, 0.0}, 0.1));
  CHECK_FALSE(passes_point(path, {20.0, 0.5}, 0.1));
  CHECK(min_distance(path, {20.0, 0.5}) == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(passes_point(path, {46.0, 0.0}, 0.1));   // 1 m past the end
  CHECK_FALSE(passes_point(path, {60.0, 0.0}, 0.1));  // beyond 20 % extension
}

TEST_CASE("sign flip crossing")
{
  const auto through = line_points(91, 0.0);
  CHECK(crossed_by_sign_flip(through, {20.0, 0.0}) == false);  // collinear: every product is zero
  std::vector<Vec2> offset;
  for (std::size_t i = 0; i < 91; ++i) {
    offset.push_back({0.5 * static_cast<double>(i), 0.3});
  }
  // a straight pass beside L keeps L on one side of the heading
  CHECK_FALSE(crossed_by_sign_flip(offset, {20.1, 0.0}));
  // the heading swings across L after the third point
  const std::vector<Vec2> swing{{-2, 0.3}, {-1, 0.3}, {0, 0.3}, {-0.2, -0.7}, {-0.4, -1.7}};
  const auto idx = first_sign_flip(swing, {0.0, 0.0});
  REQUIRE(idx.has_value());
  CHECK(*idx == 2);
  std::vector<Vec2> short_of;
  for (std::size_t i = 0; i < 91; ++i) {
    short_of.push_back({0.1 * static_cast<double>(i), 0.3});
  }
  CHECK_FALSE(crossed_by_sign_flip(short_of, {20.0, 0.0}));
}

TEST_CASE("stop at L then reverse is not a strict flip")
{
  std::vector<Vec2> pts;
  for (int i = 0; i <= 45; ++i) {
    pts.push_back({0.2 * i - 9.0, 0.0});
  }
  for (int i = 44; i >= 0; --i) {
    pts.push_back({0.2 * i - 9.0, 0.0});
  }
  CHECK_FALSE(crossed_by_sign_flip(pts, {0.0, 0.0}));
}

TEST_CASE("distance dip")
{
  std::vector<Vec2> pass;
  for (std::size_t i = 0; i < 91; ++i) {
    pass.push_back({static_cast<double>(i) - 45.0, 2.0});
  }
  const auto dip = distance_dip_index(pass, {0, 0});
  REQUIRE(dip.has_value());
  CHECK(*dip == 45);

  std::vector<Vec2> approach;
  for (std::size_t i = 0; i < 91; ++i) {
    approach.push_back({0.3 * static_cast<double>(i), 0.0});
  }
  CHECK_FALSE(crossed_by_distance_dip(approach, {40, 0}));

  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> jitter(-0.05, 0.05);
  std::vector<Vec2> stopped;
  for (std::size_t i = 0; i < 91; ++i) {
    stopped.push_back({30.0 + jitter(rng), jitter(rng)});
  }
  CHECK_FALSE(crossed_by_distance_dip(stopped, {40, 0}));
}

TEST_CASE("turn direction examples")
{
  const auto t = TurnThresholds::for_light(LightRuleParams{});
  CHECK(turn_measure({0, -10}, {0, 0}, {-10, 0}) == doctest::Approx(1.0));
  CHECK(turn_direction({0, -10}, {0, 0}, {-10, 0}, t) == Turn::Left);
  CHECK(turn_direction({0, -10}, {0, 0}, {0, 10}, t) == Turn::Straight);
  CHECK(turn_direction({0, -10}, {0, 0}, {10, 0}, t) == Turn::Right);
  // between the through band and the turn thresholds
  CHECK(classify_eta(0.2, t) == Turn::Indeterminate);
  CHECK(classify_eta(-0.2, t) == Turn::Indeterminate);
  const auto s = TurnThresholds::for_sign(SignRuleParams{});
  CHECK(turn_direction({0, -10}, {0, 0}, {0, 10}, s) == Turn::Indeterminate);
  CHECK_THROWS_AS(turn_measure({0, 0}, {0, 0}, {1, 1}), ZeroLengthVector);
  CHECK_THROWS_AS(turn_measure({0, 1}, {0, 0}, {0, 0}), ZeroLengthVector);
}

TEST_CASE("turn direction is scale invariant about ref")
{
  const auto t = TurnThresholds::for_light(LightRuleParams{});
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-20, 20);
  for (int i = 0; i < 200; ++i) {
    const Vec2 a{u(rng), u(rng)};
    const Vec2 r{u(rng), u(rng)};
    const Vec2 b{u(rng), u(rng)};
    const double k = 0.1 + std::abs(u(rng));
    auto sc = [&](Vec2 p) { return r + k * (p - r); };
    CHECK(turn_direction(sc(a), r, sc(b), t) == turn_direction(a, r, b, t));
  }
}

TEST_CASE("polar order")
{
  const std::vector<Vec2> pts = {{1, 1}, {0, 0}, {2, 0}, {1, 0}, {0, 1}};
  const PolarOrder o = polar_order(pts);
  CHECK(o.reference == Vec2{0, 0});
  REQUIRE(o.ordered.size() == 4);
  CHECK(o.ordered[0].point == Vec2{1, 0});  // tie at theta 0 broken by distance
  CHECK(o.ordered[1].point == Vec2{2, 0});
  CHECK(o.ordered[2].point == Vec2{1, 1});
  CHECK(o.ordered[3].point == Vec2{0, 1});
}

TEST_CASE("convex quadrilateral examples")
{
  const std::vector<Vec2> square = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  CHECK(convex_quadrilateral(square));
  CHECK_FALSE(convex_quadrilateral(std::vector<Vec2>{{0, 0}, {2, 0}, {2, 2}, {1, 0.5}}));
  CHECK_FALSE(convex_quadrilateral(std::vector<Vec2>{{0, 0}, {1, 0}, {2, 0}, {0, 1}}));
  CHECK_FALSE(convex_quadrilateral(std::vector<Vec2>{{0, 0}, {0, 0}, {1, 1}, {0, 1}}));
  CHECK_FALSE(convex_quadrilateral(std::vector<Vec2>{{0, 0}, {1, 0}, {1, 1}}));
}

TEST_CASE("convex quadrilateral is permutation invariant and matches the oracle")
{
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-50, 50);
  for (int i = 0; i < 300; ++i) {
    std::array<Vec2, 4> q;
    for (auto & p : q) {
      p = {u(rng), u(rng)};
    }
    const bool expected = oracle::convex_position(q);
    std::array<int, 4> perm = {0, 1, 2, 3};
    do {
      const std::vector<Vec2> pts = {q[perm[0]], q[perm[1]], q[perm[2]], q[perm[3]]};
      CHECK(convex_quadrilateral(pts) == expected);
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
}
