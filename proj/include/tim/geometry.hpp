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

#ifndef TIM_GEOMETRY_HPP_
#define TIM_GEOMETRY_HPP_

#include "tim/types.hpp"

#include <array>
#include <optional>
#include <span>
#include <vector>

namespace tim::geometry
{

/// z component of the 3-D cross product of (a, 0) and (b, 0).
constexpr double cross2(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }

/// Parametric least-squares polynomial through a trajectory, evaluable past its end.
///
/// The parameter u is the normalised cumulative chord length (0 at the first
/// point, 1 at the last); polynomials are stored in w = 2u - 1 for conditioning.
struct FittedPath
{
  std::vector<double> coeffs_x;  // ascending powers of w
  std::vector<double> coeffs_y;
  double u_end{1.0};             // 1 + p_extend
  std::size_t samples{1000};     // dense resample count over [0, u_end]

  Vec2 at(double u) const;
  double sample_step() const { return u_end / static_cast<double>(samples - 1); }
};

/// Throws DegenerateFit when fewer than d_poly + 1 distinct path parameters exist.
FittedPath fit_and_extend(std::span<const Vec2> points, int d_poly, double p_extend);

/// Smallest distance between `target` and any dense sample of the path.
double min_distance(const FittedPath & path, Vec2 target);

/// True iff some dense sample lies strictly within d_pass of `target`.
bool passes_point(const FittedPath & path, Vec2 target, double d_pass);

/// First interior index i (0-based) at which the two consecutive cross products
/// around `ref` have opposite strict signs.
std::optional<std::size_t> first_sign_flip(std::span<const Vec2> points, Vec2 ref);
bool crossed_by_sign_flip(std::span<const Vec2> points, Vec2 ref);

inline constexpr double kDipTolerance = 0.1;  // m

/// Index (0-based) of the first distance minimum when it sits more than `tau`
/// below both end distances.
std::optional<std::size_t> distance_dip_index(std::span<const Vec2> points, Vec2 ref,
                                              double tau = kDipTolerance);
bool crossed_by_distance_dip(std::span<const Vec2> points, Vec2 ref, double tau = kDipTolerance);

enum class Turn { Left, Right, Straight, Indeterminate };

std::string_view to_string(Turn turn);

/// Without a through band (the stop-sign variant) nothing is ever Straight.
struct TurnThresholds
{
  double left{0.3};
  double right{-0.3};
  std::optional<double> through_1;
  std::optional<double> through_2;

  static TurnThresholds for_light(const LightRuleParams & p);
  static TurnThresholds for_sign(const SignRuleParams & p);
};

/// eta = cross2(unit(ref - start), unit(end - ref)); throws ZeroLengthVector.
double turn_measure(Vec2 start, Vec2 ref, Vec2 end);

Turn classify_eta(double eta, const TurnThresholds & t);
Turn turn_direction(Vec2 start, Vec2 ref, Vec2 end, const TurnThresholds & t);

struct PolarEntry
{
  Vec2 point;
  double theta;
};

/// Reference point (lexicographic minimum of x then y) and the remaining points
/// sorted by polar angle about it, ties by increasing distance.
struct PolarOrder
{
  Vec2 reference;
  std::vector<PolarEntry> ordered;
};

PolarOrder polar_order(std::span<const Vec2> points);

/// Strict convex position of exactly four points (any input order).
bool convex_quadrilateral(std::span<const Vec2> points);

}  // namespace tim::geometry

#endif  // TIM_GEOMETRY_HPP_
