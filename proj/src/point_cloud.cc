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

#include "planefit/point_cloud.h"

#include <algorithm>
#include <string>
#include <utility>

namespace planefit {

void PointCloud::CheckDim(int dim) {
  if (dim != 2 && dim != 3) {
    throw Error("point dimension must be 2 or 3, got " + std::to_string(dim));
  }
}

PointCloud::PointCloud(int dim, std::vector<Vec> points)
    : dim_(dim), points_(std::move(points)) {
  CheckDim(dim);
  for (const Vec& p : points_) {
    if (p.dim() != dim_) throw Error("mixed point dimensions in cloud");
  }
}

PointCloud::PointCloud(int dim, std::vector<Vec> points,
                       std::vector<UnitNormal> normals)
    : PointCloud(dim, std::move(points)) {
  SetNormals(std::move(normals));
}

void PointCloud::AddPoint(const Vec& p) {
  if (p.dim() != dim_) throw Error("mixed point dimensions in cloud");
  if (normals_) throw Error("AddPoint on a cloud with normals");
  points_.push_back(p);
}

void PointCloud::SetNormals(std::vector<UnitNormal> normals) {
  if (normals.size() != points_.size()) {
    throw Error("normal count " + std::to_string(normals.size()) +
                " does not match point count " +
                std::to_string(points_.size()));
  }
  for (const UnitNormal& n : normals) {
    if (n.dim() != dim_) throw Error("normal dimension mismatch");
  }
  normals_ = std::move(normals);
}

std::pair<Vec, Vec> PointCloud::Bounds() const {
  Vec lo = Vec::Zero(dim_), hi = Vec::Zero(dim_);
  if (points_.empty()) return {lo, hi};
  lo = hi = points_.front();
  for (const Vec& p : points_) {
    for (int d = 0; d < dim_; ++d) {
      lo[d] = std::min(lo[d], p[d]);
      hi[d] = std::max(hi[d], p[d]);
    }
  }
  return {lo, hi};
}

double PointCloud::BoundingDiagonal() const {
  const auto [lo, hi] = Bounds();
  return Distance(lo, hi);
}

}  // namespace planefit
