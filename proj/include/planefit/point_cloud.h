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

#ifndef PLANEFIT_POINT_CLOUD_H_
#define PLANEFIT_POINT_CLOUD_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "planefit/vec.h"

namespace planefit {

using PointIndex = std::uint32_t;

// Ordered points of one dimension (2 or 3) with optional per-point canonical
// normals.
class PointCloud {
 public:
  explicit PointCloud(int dim = 3) : dim_(dim) { CheckDim(dim); }
  PointCloud(int dim, std::vector<Vec> points);
  PointCloud(int dim, std::vector<Vec> points, std::vector<UnitNormal> normals);

  int dim() const { return dim_; }
  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }

  const std::vector<Vec>& points() const { return points_; }
  const Vec& point(std::size_t i) const { return points_[i]; }

  bool has_normals() const { return normals_.has_value(); }
  // Precondition: has_normals().
  const std::vector<UnitNormal>& normals() const { return *normals_; }
  const UnitNormal& normal(std::size_t i) const { return (*normals_)[i]; }

  void AddPoint(const Vec& p);
  void SetNormals(std::vector<UnitNormal> normals);
  void ClearNormals() { normals_.reset(); }

  // Axis-aligned bounding box; both corners are zero for an empty cloud.
  std::pair<Vec, Vec> Bounds() const;
  // Length of the bounding-box diagonal.
  double BoundingDiagonal() const;

 private:
  static void CheckDim(int dim);

  int dim_;
  std::vector<Vec> points_;
  std::optional<std::vector<UnitNormal>> normals_;
};

}  // namespace planefit

#endif  // PLANEFIT_POINT_CLOUD_H_
