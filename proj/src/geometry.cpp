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

#include "tim/geometry.hpp"

#include "tim/error.hpp"
#include "tim/simd/kernels.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace tim::geometry
{

namespace
{

constexpr double kChordEpsilon = 1e-9;  // m; shorter steps do not add a distinct parameter
constexpr double kCollinearRel = 1e-12;

double horner(const std::vector<double> & c, double w)
{
  double acc = 0.0;
  for (std::size_t j = c.size(); j-- > 0;) {
    acc = acc * w + c[j];
  }
  return acc;
}

// Sign of cross2(a, b), with products lost in rounding treated as zero.
int cross_sign(Vec2 a, Vec2 b)
{
  const double c = cross2(a, b);
  const double scale = std::sqrt(a.squared_norm() * b.squared_norm());
  if (std::abs(c) <= kCollinearRel * scale) {
    return 0;
  }
  return c > 0 ? 1 : -1;
}

}  // namespace

Vec2 FittedPath::at(double u) const
{
  const double w = 2.0 * u - 1.0;
  return {horner(coeffs_x, w), horner(coeffs_y, w)};
}

FittedPath fit_and_extend(std::span<const Vec2> points, int d_poly, double p_extend)
{
  if (d_poly < 1) {
    throw DegenerateFit("polynomial degree must be >= 1");
  }
  const std::size_t n = points.size();
  const auto terms = static_cast<std::size_t>(d_poly) + 1;

  std::vector<double> chord(n, 0.0);
  std::size_t distinct = n > 0 ? 1 : 0;
  for (std::size_t i = 1; i < n; ++i) {
    const double step = distance(points[i - 1], points[i]);
    chord[i] = chord[i - 1] + step;
    if (step > kChordEpsilon) {
      ++distinct;
    }
  }
  if (distinct < terms || chord.back() <= kChordEpsilon) {
    throw DegenerateFit("need at least " + std::to_string(terms) +
                        " distinct positions along the path, got " + std::to_string(distinct));
  }

  const double total = chord.back();
  Eigen::MatrixXd vander(n, terms);
  Eigen::VectorXd xs(n);
  Eigen::VectorXd ys(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double w = 2.0 * (chord[i] / total) - 1.0;
    double power = 1.0;
    for (std::size_t j = 0; j < terms; ++j) {
      vander(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = power;
      power *= w;
    }
    xs(static_cast<Eigen::Index>(i)) = points[i].x;
    ys(static_cast<Eigen::Index>(i)) = points[i].y;
  }
  const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(vander);
  if (qr.rank() < static_cast<Eigen::Index>(terms)) {
    throw DegenerateFit("rank-deficient polynomial design matrix");
  }
  const Eigen::VectorXd cx = qr.solve(xs);
  const Eigen::VectorXd cy = qr.solve(ys);

  FittedPath path;
  path.coeffs_x.assign(cx.data(), cx.data() + cx.size());
  path.coeffs_y.assign(cy.data(), cy.data() + cy.size());
  path.u_end = 1.0 + p_extend;
  return path;
}

double min_distance(const FittedPath & path, Vec2 target)
{
  simd::PolyPathSamples samples;
  samples.cx = path.coeffs_x;
  samples.cy = path.coeffs_y;
  samples.w0 = -1.0;
  samples.dw = 2.0 * path.sample_step();
  samples.count = path.samples;
  return std::sqrt(simd::poly_path_min_sq_distance(samples, target.x, target.y));
}

bool passes_point(const FittedPath & path, Vec2 target, double d_pass)
{
  return min_distance(path, target) < d_pass;
}

std::optional<std::size_t> first_sign_flip(std::span<const Vec2> points, Vec2 ref)
{
  for (std::size_t i = 1; i + 1 < points.size(); ++i) {
    const int before = cross_sign(ref - points[i - 1], points[i] - ref);
    const int after = cross_sign(ref - points[i], points[i + 1] - ref);
    if (before * after < 0) {
      return i;
    }
  }
  return std::nullopt;
}

bool crossed_by_sign_flip(std::span<const Vec2> points, Vec2 ref)
{
  return first_sign_flip(points, ref).has_value();
}

std::optional<std::size_t> distance_dip_index(std::span<const Vec2> points, Vec2 ref, double tau)
{
  if (points.size() < 3) {
    return std::nullopt;
  }
  std::size_t best = 0;
  double best_d = distance(points[0], ref);
  for (std::size_t i = 1; i < points.size(); ++i) {
    const double d = distance(points[i], ref);
    if (d < best_d) {
      best_d = d;
      best = i;
    }
  }
  const double first = distance(points.front(), ref);
  const double last = distance(points.back(), ref);
  if (best_d < first - tau && best_d < last - tau) {
    return best;
  }
  return std::nullopt;
}

bool crossed_by_distance_dip(std::span<const Vec2> points, Vec2 ref, double tau)
{
  return distance_dip_index(points, ref, tau).has_value();
}

std::string_view to_string(Turn turn)
{
  switch (turn) {
    case Turn::Left:
      return "Left";
    case Turn::Right:
      return "Right";
    case Turn::Straight:
      return "Straight";
    case Turn::Indeterminate:
      break;
  }
  return "Indeterminate";
}

TurnThresholds TurnThresholds::for_light(const LightRuleParams & p)
{
  return {p.eta_left, p.eta_right, p.eta_through_1, p.eta_through_2};
}

TurnThresholds TurnThresholds::for_sign(const SignRuleParams & p)
{
  return {p.eta_left_sign, p.eta_right_sign, std::nullopt, std::nullopt};
}

double turn_measure(Vec2 start, Vec2 ref, Vec2 end)
{
  const Vec2 in = ref - start;
  const Vec2 out = end - ref;
  const double n_in = in.norm();
  const double n_out = out.norm();
  if (n_in == 0.0 || n_out == 0.0) {
    throw ZeroLengthVector("turn measure needs start != ref and ref != end");
  }
  return cross2((1.0 / n_in) * in, (1.0 / n_out) * out);
}

Turn classify_eta(double eta, const TurnThresholds & t)
{
  if (eta > t.left) {
    return Turn::Left;
  }
  if (eta < t.right) {
    return Turn::Right;
  }
  if (t.through_1 && t.through_2 && *t.through_2 < eta && eta < *t.through_1) {
    return Turn::Straight;
  }
  return Turn::Indeterminate;
}

Turn turn_direction(Vec2 start, Vec2 ref, Vec2 end, const TurnThresholds & t)
{
  return classify_eta(turn_measure(start, ref, end), t);
}

PolarOrder polar_order(std::span<const Vec2> points)
{
  PolarOrder out;
  if (points.empty()) {
    return out;
  }
  const auto ref_it = std::min_element(points.begin(), points.end(), [](Vec2 a, Vec2 b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });
  out.reference = *ref_it;
  const auto ref_pos = static_cast<std::size_t>(ref_it - points.begin());
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (i != ref_pos) {
      const Vec2 d = points[i] - out.reference;
      out.ordered.push_back({points[i], std::atan2(d.y, d.x)});
    }
  }
  const Vec2 ref = out.reference;
  std::stable_sort(out.ordered.begin(), out.ordered.end(),
                   [ref](const PolarEntry & a, const PolarEntry & b) {
                     if (a.theta != b.theta) {
                       return a.theta < b.theta;
                     }
                     return (a.point - ref).squared_norm() < (b.point - ref).squared_norm();
                   });
  return out;
}

bool convex_quadrilateral(std::span<const Vec2> points)
{
  if (points.size() != 4) {
    return false;
  }
  const PolarOrder order = polar_order(points);
  const std::array<Vec2, 4> q = {order.reference, order.ordered[0].point, order.ordered[1].point,
                                 order.ordered[2].point};
  int positive = 0;
  int negative = 0;
  for (std::size_t k = 0; k < 4; ++k) {
    const Vec2 e1 = q[(k + 1) % 4] - q[k];
    const Vec2 e2 = q[(k + 2) % 4] - q[(k + 1) % 4];
    const double c = cross2(e1, e2);
    positive += c > 0 ? 1 : 0;
    negative += c < 0 ? 1 : 0;
  }
  return positive == 4 || negative == 4;
}

}  // namespace tim::geometry
