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

#ifndef TIM_DBSCAN_HPP_
#define TIM_DBSCAN_HPP_

#include "tim/types.hpp"

#include <span>
#include <vector>

namespace tim::clustering
{

inline constexpr int kNoise = -1;

/// Cluster ids are 0..cluster_count-1, numbered by first appearance in input order.
struct ClusterAssignment
{
  std::vector<int> labels;
  int cluster_count{0};

  std::vector<std::size_t> members(int cluster) const;

  friend bool operator==(const ClusterAssignment &, const ClusterAssignment &) = default;
};

/// Brute-force DBSCAN. Neighbours are points with distance <= eps, the point
/// itself included; a core point has at least min_pts neighbours. Border points
/// reachable from several clusters go to the one that reaches them first when
/// clusters are grown from seeds in input order.
ClusterAssignment dbscan(std::span<const Vec2> points, double eps, int min_pts);

}  // namespace tim::clustering

#endif  // TIM_DBSCAN_HPP_
