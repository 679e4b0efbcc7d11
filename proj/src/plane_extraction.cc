// Copyright 2026 The Authors.
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

#include "planefit/plane_extraction.h"

#include <algorithm>
#include <cmath>

namespace planefit {

double PointPlaneDistance(const Vec& p, const Hyperplane& plane) {
  return std::abs(plane.normal.vec().Dot(p) - plane.offset);
}

Vec ProjectPoint(const Vec& p, const Hyperplane& plane) {
  const Vec& n = plane.normal.vec();
  return p - (n.Dot(p) - plane.offset) * n;
}

PlaneExtraction ExtractPlanes(const PointCloud& cloud,
                              const NeighborGraph& graph,
                              const ReconstructionResult& result,
                              std::int64_t tau) {
  const auto& index = result.per_point_normal_index;
  if (graph.size() != cloud.size() || index.size() != cloud.size()) {
    throw Error("ExtractPlanes inputs do not describe the same cloud");
  }
  const std::size_t n = cloud.size();
  constexpr std::int32_t kUnvisited = -2;
  std::vector<std::int32_t> component(n, kUnvisited);
  std::vector<std::vector<PointIndex>> components;
  std::vector<PointIndex> stack;
  for (PointIndex seed = 0; seed < n; ++seed) {
    if (component[seed] != kUnvisited) continue;
    const auto cid = static_cast<std::int32_t>(components.size());
    components.emplace_back();
    auto& members = components.back();
    component[seed] = cid;
    stack.assign(1, seed);
    while (!stack.empty()) {
      const PointIndex p = stack.back();
      stack.pop_back();
      members.push_back(p);
      for (PointIndex q : graph.neighbors(p)) {
        if (component[q] == kUnvisited && index[q] == index[p]) {
          component[q] = cid;
          stack.push_back(q);
        }
      }
    }
    std::sort(members.begin(), members.end());
  }

  // Components are discovered in ascending order of their smallest point, so
  // a stable sort by size gives ties to the lower point index.
  std::vector<std::size_t> order;
  for (std::size_t c = 0; c < components.size(); ++c) {
    if (static_cast<std::int64_t>(components[c].size()) >= tau) order.push_back(c);
  }
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return components[a].size() > components[b].size();
  });

  PlaneExtraction out;
  out.labeled.cloud = cloud;
  out.labeled.labels.assign(n, kOutlier);
  for (std::size_t c : order) {
    Hyperplane plane;
    plane.id = static_cast<std::int32_t>(out.planes.size());
    plane.support = std::move(components[c]);
    plane.normal_index = index[plane.support.front()];
    plane.normal = result.selected_normals[plane.normal_index];
    double sum = 0.0;
    for (PointIndex p : plane.support) {
      sum += plane.normal.vec().Dot(cloud.point(p));
      out.labeled.labels[p] = plane.id;
    }
    plane.offset = sum / static_cast<double>(plane.support.size());
    out.planes.push_back(std::move(plane));
  }
  return out;
}

}  // namespace planefit
