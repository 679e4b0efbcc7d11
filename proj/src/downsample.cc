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

#include "planefit/downsample.h"

#include <array>
#include <cmath>
#include <map>

namespace planefit {

Downsampled GridDownsample(const PointCloud& cloud, double cell) {
  if (!(cell > 0.0) || !std::isfinite(cell)) {
    throw Error("down-sampling cell size must be positive");
  }
  const int dim = cloud.dim();
  const auto [lo, hi] = cloud.Bounds();
  std::map<std::array<long long, 3>, PointIndex> first;
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    std::array<long long, 3> key{0, 0, 0};
    for (int d = 0; d < dim; ++d) {
      key[d] = static_cast<long long>(std::floor((cloud.point(i)[d] - lo[d]) / cell));
    }
    first.try_emplace(key, static_cast<PointIndex>(i));
  }
  std::vector<char> keep(cloud.size(), 0);
  for (const auto& [key, idx] : first) keep[idx] = 1;

  Downsampled out;
  std::vector<Vec> pts;
  std::vector<UnitNormal> normals;
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    if (!keep[i]) continue;
    out.kept.push_back(static_cast<PointIndex>(i));
    pts.push_back(cloud.point(i));
    if (cloud.has_normals()) normals.push_back(cloud.normal(i));
  }
  out.cloud = cloud.has_normals() ? PointCloud(dim, std::move(pts), std::move(normals))
                                  : PointCloud(dim, std::move(pts));
  return out;
}

}  // namespace planefit
