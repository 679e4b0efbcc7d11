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

#ifndef PLANEFIT_KDTREE_H_
#define PLANEFIT_KDTREE_H_

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "planefit/point_cloud.h"
#include "planefit/vec.h"

namespace planefit {

struct Neighbor {
  PointIndex index;
  double squared_distance;

  // Nearest first; equal distances resolve to the lower index.
  friend bool operator<(const Neighbor& a, const Neighbor& b) {
    if (a.squared_distance != b.squared_distance) {
      return a.squared_distance < b.squared_distance;
    }
    return a.index < b.index;
  }
  friend bool operator==(const Neighbor&, const Neighbor&) = default;
};

// Static axis-aligned kd-tree answering exact k-nearest-neighbor queries.
// The tree keeps a reference to the point array, which must outlive it.
// Queries are const and may run concurrently.
class KdTree {
 public:
  static constexpr PointIndex kNoSkip = std::numeric_limits<PointIndex>::max();

  KdTree(std::span<const Vec> points, int dim);

  std::size_t size() const { return points_.size(); }

  // The k nearest points to `query` in (distance, index) order, leaving out
  // the point with index `skip`. Returns fewer than k when the tree is small.
  std::vector<Neighbor> Nearest(const Vec& query, std::size_t k,
                                PointIndex skip = kNoSkip) const;

  // Same as Nearest() but writes into `out` to avoid reallocation.
  void Nearest(const Vec& query, std::size_t k, PointIndex skip,
               std::vector<Neighbor>& out) const;

 private:
  struct Node {
    // Children for inner nodes, point range [begin, end) for leaves.
    std::uint32_t begin = 0;
    std::uint32_t end = 0;
    std::int32_t left = -1;
    std::int32_t right = -1;
    int axis = -1;
    double split = 0.0;
    Vec lo, hi;
  };

  std::int32_t Build(std::uint32_t begin, std::uint32_t end);
  void Search(std::int32_t node, const Vec& q, std::size_t k, PointIndex skip,
              std::vector<Neighbor>& heap) const;
  double BoxDistance(const Node& node, const Vec& q) const;

  static constexpr std::uint32_t kLeafSize = 12;

  std::span<const Vec> points_;
  int dim_;
  std::vector<PointIndex> order_;
  std::vector<Node> nodes_;
};

}  // namespace planefit

#endif  // PLANEFIT_KDTREE_H_
