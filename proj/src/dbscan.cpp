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

#include "tim/dbscan.hpp"

#include <deque>

namespace tim::clustering
{

namespace
{

constexpr int kUnvisited = -2;

std::vector<std::size_t> region_query(std::span<const Vec2> points, std::size_t i, double eps2)
{
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < points.size(); ++j) {
    if ((points[j] - points[i]).squared_norm() <= eps2) {
      out.push_back(j);
    }
  }
  return out;
}

}  // namespace

std::vector<std::size_t> ClusterAssignment::members(int cluster) const
{
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == cluster) {
      out.push_back(i);
    }
  }
  return out;
}

ClusterAssignment dbscan(std::span<const Vec2> points, double eps, int min_pts)
{
  const double eps2 = eps * eps;
  const auto need = static_cast<std::size_t>(min_pts < 1 ? 1 : min_pts);
  ClusterAssignment out;
  out.labels.assign(points.size(), kUnvisited);

  for (std::size_t seed = 0; seed < points.size(); ++seed) {
    if (out.labels[seed] != kUnvisited) {
      continue;
    }
    const auto neighbours = region_query(points, seed, eps2);
    if (neighbours.size() < need) {
      out.labels[seed] = kNoise;  // may still be claimed as a border point later
      continue;
    }
    const int id = out.cluster_count++;
    out.labels[seed] = id;
    std::deque<std::size_t> frontier(neighbours.begin(), neighbours.end());
    while (!frontier.empty()) {
      const std::size_t q = frontier.front();
      frontier.pop_front();
      if (out.labels[q] == kNoise) {
        out.labels[q] = id;
      }
      if (out.labels[q] != kUnvisited) {
        continue;
      }
      out.labels[q] = id;
      const auto reach = region_query(points, q, eps2);
      if (reach.size() >= need) {
        frontier.insert(frontier.end(), reach.begin(), reach.end());
      }
    }
  }

  // Seeds are visited in input order, so ids already follow first appearance
  // of a core point; relabel by first appearance of any member.
  std::vector<int> remap(static_cast<std::size_t>(out.cluster_count), -1);
  int next = 0;
  for (int & label : out.labels) {
    if (label >= 0) {
      int & r = remap[static_cast<std::size_t>(label)];
      if (r < 0) {
        r = next++;
      }
      label = r;
    }
  }
  return out;
}

}  // namespace tim::clustering
