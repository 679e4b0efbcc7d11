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

#include "planefit/knn_graph.h"

#include <algorithm>
#include <string>

#include "planefit/kdtree.h"
#include "planefit/parallel.h"

namespace planefit {
namespace {

void CheckArgs(const PointCloud& cloud, int k) {
  if (k < 1) throw Error("k must be at least 1, got " + std::to_string(k));
  if (cloud.size() < static_cast<std::size_t>(k) + 1) {
    throw Error("cloud has " + std::to_string(cloud.size()) +
                " points; k = " + std::to_string(k) + " needs at least " +
                std::to_string(k + 1));
  }
}

std::vector<PointIndex> QueryOne(const KdTree& tree, const PointCloud& cloud,
                                 std::size_t i, int k,
                                 std::vector<Neighbor>& scratch) {
  tree.Nearest(cloud.point(i), static_cast<std::size_t>(k),
               static_cast<PointIndex>(i), scratch);
  std::vector<PointIndex> out;
  out.reserve(scratch.size());
  for (const Neighbor& n : scratch) out.push_back(n.index);
  return out;
}

}  // namespace

NeighborGraph::NeighborGraph(std::vector<std::vector<PointIndex>> lists,
                             int k)
    : neighbors_(lists.size()), k_(k) {
  for (std::size_t i = 0; i < lists.size(); ++i) {
    for (PointIndex j : lists[i]) {
      if (j == i) continue;
      neighbors_[i].push_back(j);
      neighbors_[j].push_back(static_cast<PointIndex>(i));
    }
  }
  for (auto& adj : neighbors_) {
    std::sort(adj.begin(), adj.end());
    adj.erase(std::unique(adj.begin(), adj.end()), adj.end());
    adj.shrink_to_fit();
    edge_count_ += adj.size();
  }
  edge_count_ /= 2;
}

std::vector<std::vector<PointIndex>> KnnLists(const PointCloud& cloud, int k) {
  CheckArgs(cloud, k);
  const KdTree tree(cloud.points(), cloud.dim());
  std::vector<std::vector<PointIndex>> lists(cloud.size());
  const auto n = static_cast<std::ptrdiff_t>(cloud.size());
#pragma omp parallel num_threads(MaxThreads())
  {
    std::vector<Neighbor> scratch;
#pragma omp for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      lists[i] = QueryOne(tree, cloud, static_cast<std::size_t>(i), k, scratch);
    }
  }
  return lists;
}

NeighborGraph BuildKnnGraph(const PointCloud& cloud, int k) {
  return NeighborGraph(KnnLists(cloud, k), k);
}

namespace serial {

std::vector<std::vector<PointIndex>> KnnLists(const PointCloud& cloud, int k) {
  CheckArgs(cloud, k);
  const KdTree tree(cloud.points(), cloud.dim());
  std::vector<std::vector<PointIndex>> lists(cloud.size());
  std::vector<Neighbor> scratch;
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    lists[i] = QueryOne(tree, cloud, i, k, scratch);
  }
  return lists;
}

NeighborGraph BuildKnnGraph(const PointCloud& cloud, int k) {
  return NeighborGraph(serial::KnnLists(cloud, k), k);
}

}  // namespace serial
}  // namespace planefit
