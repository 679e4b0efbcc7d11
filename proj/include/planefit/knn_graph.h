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

#ifndef PLANEFIT_KNN_GRAPH_H_
#define PLANEFIT_KNN_GRAPH_H_

#include <cstddef>
#include <span>
#include <vector>

#include "planefit/point_cloud.h"

namespace planefit {

// Symmetric neighbor graph over point indices: j in N(i) implies i in N(j).
// Adjacency lists are sorted ascending without duplicates or self-loops.
class NeighborGraph {
 public:
  NeighborGraph() = default;
  // Builds from raw (possibly asymmetric) lists by edge union.
  NeighborGraph(std::vector<std::vector<PointIndex>> lists, int k);

  std::size_t size() const { return neighbors_.size(); }
  int k() const { return k_; }
  std::span<const PointIndex> neighbors(std::size_t i) const {
    return neighbors_[i];
  }
  // Number of undirected edges.
  std::size_t edge_count() const { return edge_count_; }

 private:
  std::vector<std::vector<PointIndex>> neighbors_;
  int k_ = 0;
  std::size_t edge_count_ = 0;
};

// Links every point to its k Euclidean nearest neighbors (ties to the lower
// index) and symmetrizes by union. Queries run in parallel. Throws Error when
// the cloud has fewer than k + 1 points or k < 1.
NeighborGraph BuildKnnGraph(const PointCloud& cloud, int k);

// Raw per-point k-nearest lists before symmetrization, nearest first.
std::vector<std::vector<PointIndex>> KnnLists(const PointCloud& cloud, int k);

namespace serial {
// Single-threaded reference for BuildKnnGraph / KnnLists.
NeighborGraph BuildKnnGraph(const PointCloud& cloud, int k);
std::vector<std::vector<PointIndex>> KnnLists(const PointCloud& cloud, int k);
}  // namespace serial

}  // namespace planefit

#endif  // PLANEFIT_KNN_GRAPH_H_
