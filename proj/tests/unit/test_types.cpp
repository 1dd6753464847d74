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

#include "support/builders.hpp"
#include "tim/error.hpp"
#include "tim/validate.hpp"

#include <doctest.h>

using namespace tim;

TEST_CASE("samples_for rounds seconds to whole samples")
{
  CHECK(samples_for(1.0) == 10);
  CHECK(samples_for(0.5) == 5);
  CHECK(samples_for(2.0) == 20);
  CHECK(samples_for(0.0) == 0);
}

TEST_CASE("category names round-trip")
{
  for (InteractionCategory c : kAllCategories) {
    const auto back = category_from_string(to_string(c));
    REQUIRE(back.has_value());
    CHECK(*back == c);
  }
  CHECK_FALSE(category_from_string("lightstop").has_value());
  CHECK(is_light_category(InteractionCategory::LightStraight));
  CHECK(is_sign_category(InteractionCategory::SignLeftTwoStep));
  CHECK_FALSE(is_sign_category(InteractionCategory::None));
  CHECK_FALSE(is_light_category(InteractionCategory::None));
}

TEST_CASE("well formed segment has no violations")
{
  Segment s = test::straight_segment(5.0);
  s.lights.push_back(test::light_at({10, 0}));
  s.signs.push_back({{20, 2}});
  CHECK(validate_segment(s).empty());
}

TEST_CASE("segment violations are reported with field and index")
{
  Segment s = test::straight_segment(5.0);
  s.steps.pop_back();
  auto v = validate_segment(s);
  REQUIRE(v.size() == 1);
  CHECK(v[0].field == "steps");

  s = test::straight_segment(5.0);
  s.steps[4].speed = -1.0;
  s.steps[7].index = 3;
  v = validate_segment(s);
  REQUIRE(v.size() == 2);
  CHECK(v[0].field == "steps.speed");
  CHECK(*v[0].index == 4);
  CHECK(describe(v[1]) == "steps.index[7]: expected index 8, got 3");

  s = test::straight_segment(5.0);
  s.lights.push_back(test::light_at({1, 1}, 9));
  v = validate_segment(s);
  CHECK(v.size() == kSegmentSteps);
}

TEST_CASE("light parameter ordering is enforced")
{
  LightRuleParams p;
  CHECK_NOTHROW(p.validate());
  p.eta_left = 0.1;
  p.eta_through_1 = 0.3;
  CHECK_THROWS_AS(p.validate(), ConfigError);
  try {
    p.validate();
  } catch (const ConfigError & e) {
    CHECK(e.key() == "light.eta");
  }
  LightRuleParams q;
  q.p_extend = 1.5;
  CHECK_THROWS_AS(q.validate(), ConfigError);
}

TEST_CASE("sign parameters are validated")
{
  SignRuleParams p;
  CHECK_NOTHROW(p.validate());
  p.dbscan_eps = 0.0;
  CHECK_THROWS_AS(p.validate(), ConfigError);
  SignRuleParams q;
  q.eta_left_sign = -0.1;
  CHECK_THROWS_AS(q.validate(), ConfigError);
}

TEST_CASE("vector helpers")
{
  CHECK(distance({0, 0}, {3, 4}) == doctest::Approx(5.0));
  CHECK(dot({1, 2}, {3, 4}) == 11.0);
  CHECK((Vec2{1, 2} + Vec2{3, 4}) == Vec2{4, 6});
  CHECK((2.0 * Vec2{1, -1}) == Vec2{2, -2});
}
