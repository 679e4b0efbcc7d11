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

#ifndef PLANEFIT_PLANE_EXTRACTION_H_
#define PLANEFIT_PLANE_EXTRACTION_H_

#include <cstdint>
#include <vector>

#include "planefit/global_l0.h"
#include "planefit/knn_graph.h"
#include "planefit/point_cloud.h"

namespace planefit {

inline constexpr std::int32_t kOutlier = -1;

// A line (2D) or plane (3D): points x with <normal, x> = offset.
struct Hyperplane {
  std::int32_t id = 0;
  UnitNormal normal = UnitNormal::Up(3);
  double offset = 0.0;
  std::vector<PointIndex> support;  // ascending
  std::uint32_t normal_index = 0;   // into ReconstructionResult::selected_normals
};

struct LabeledCloud {
  PointCloud cloud;
  std::vector<std::int32_t> labels;  // plane id or kOutlier, per point
};

struct PlaneExtraction {
  std::vector<Hyperplane> planes;  // ids 0.. in descending support size
  LabeledCloud labeled;
};

// Connected components of the graph restricted to edges whose endpoints
// share a reconstructed normal index. Components with at least tau points
// become planes with the shared normal and the least-squares offset; the rest
// is labeled kOutlier. An empty plane list is a valid result.
PlaneExtraction ExtractPlanes(const PointCloud& cloud,
                              const NeighborGraph& graph,
                              const ReconstructionResult& result,
                              std::int64_t tau);

double PointPlaneDistance(const Vec& p, const Hyperplane& plane);
Vec ProjectPoint(const Vec& p, const Hyperplane& plane);

}  // namespace planefit

#endif  // PLANEFIT_PLANE_EXTRACTION_H_
