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

#ifndef PLANEFIT_NORMALS_H_
#define PLANEFIT_NORMALS_H_

#include <cstddef>
#include <span>

#include "planefit/knn_graph.h"
#include "planefit/point_cloud.h"

namespace planefit {

struct NormalEstimate {
  PointCloud cloud;  // input points with normals populated
  // Points whose neighborhood collapsed to a single location; they receive
  // UnitNormal::Up().
  std::size_t degenerate_count = 0;
};

// Normal of the best-fit hyperplane through `points`: the eigenvector of
// their covariance with the smallest eigenvalue, canonicalized. Returns
// false (and leaves `out` untouched) for a degenerate set.
bool PcaNormal(std::span<const Vec> points, int dim, UnitNormal& out);

// PCA normal per point over {i} and its graph neighbors.
NormalEstimate EstimateNormalsPca(const PointCloud& cloud,
                                  const NeighborGraph& graph);

// PCA normal per point over {i} and its k nearest neighbors. Lets the normal
// neighborhood be wider than the fusion graph, which noisy scans need.
NormalEstimate EstimateNormalsPca(const PointCloud& cloud, int k);

// Single-threaded references with identical results.
namespace serial {
NormalEstimate EstimateNormalsPca(const PointCloud& cloud,
                                  const NeighborGraph& graph);
NormalEstimate EstimateNormalsPca(const PointCloud& cloud, int k);
}  // namespace serial

}  // namespace planefit

#endif  // PLANEFIT_NORMALS_H_
