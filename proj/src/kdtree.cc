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

#include "planefit/kdtree.h"

#include <algorithm>
#include <numeric>

namespace planefit {

KdTree::KdTree(std::span<const Vec> points, int dim)
    : points_(points), dim_(dim), order_(points.size()) {
  std::iota(order_.begin(), order_.end(), PointIndex{0});
  if (!order_.empty()) {
    nodes_.reserve(2 * (order_.size() / kLeafSize + 1));
    Build(0, static_cast<std::uint32_t>(order_.size()));
  }
}

std::int32_t KdTree::Build(std::uint32_t begin, std::uint32_t end) {
  const auto id = static_cast<std::int32_t>(nodes_.size());
  nodes_.emplace_back();
  Node node;
  node.begin = begin;
  node.end = end;
  node.lo = node.hi = points_[order_[begin]];
  for (std::uint32_t i = begin; i < end; ++i) {
    const Vec& p = points_[order_[i]];
    for (int d = 0; d < dim_; ++d) {
      node.lo[d] = std::min(node.lo[d], p[d]);
      node.hi[d] = std::max(node.hi[d], p[d]);
    }
  }
  if (end - begin > kLeafSize) {
    int axis = 0;
    for (int d = 1; d < dim_; ++d) {
      if (node.hi[d] - node.lo[d] > node.hi[axis] - node.lo[axis]) axis = d;
    }
    if (node.hi[axis] > node.lo[axis]) {
      const std::uint32_t mid = begin + (end - begin) / 2;
      std::nth_element(order_.begin() + begin, order_.begin() + mid,
                       order_.begin() + end,
                       [&](PointIndex a, PointIndex b) {
                         return points_[a][axis] < points_[b][axis];
                       });
      node.axis = axis;
      node.split = points_[order_[mid]][axis];
      node.left = Build(begin, mid);
      node.right = Build(mid, end);
    }
  }
  nodes_[id] = node;
  return id;
}

double KdTree::BoxDistance(const Node& node, const Vec& q) const {
  double sum = 0.0;
  for (int d = 0; d < dim_; ++d) {
    double diff = 0.0;
    if (q[d] < node.lo[d]) {
      diff = node.lo[d] - q[d];
    } else if (q[d] > node.hi[d]) {
      diff = q[d] - node.hi[d];
    }
    sum += diff * diff;
  }
  return sum;
}

void KdTree::Search(std::int32_t id, const Vec& q, std::size_t k,
                    PointIndex skip, std::vector<Neighbor>& heap) const {
  const Node& node = nodes_[id];
  if (heap.size() == k && BoxDistance(node, q) > heap.front().squared_distance) {
    return;
  }
  if (node.left < 0) {
    for (std::uint32_t i = node.begin; i < node.end; ++i) {
      const PointIndex idx = order_[i];
      if (idx == skip) continue;
      const Neighbor cand{idx, SquaredDistance(points_[idx], q)};
      if (heap.size() < k) {
        heap.push_back(cand);
        std::push_heap(heap.begin(), heap.end());
      } else if (cand < heap.front()) {
        std::pop_heap(heap.begin(), heap.end());
        heap.back() = cand;
        std::push_heap(heap.begin(), heap.end());
      }
    }
    return;
  }
  const bool go_left_first = q[node.axis] < node.split;
  Search(go_left_first ? node.left : node.right, q, k, skip, heap);
  Search(go_left_first ? node.right : node.left, q, k, skip, heap);
}

void KdTree::Nearest(const Vec& query, std::size_t k, PointIndex skip,
                     std::vector<Neighbor>& out) const {
  out.clear();
  if (k == 0 || nodes_.empty()) return;
  Search(0, query, k, skip, out);
  std::sort_heap(out.begin(), out.end());
}

std::vector<Neighbor> KdTree::Nearest(const Vec& query, std::size_t k,
                                      PointIndex skip) const {
  std::vector<Neighbor> out;
  out.reserve(k);
  Nearest(query, k, skip, out);
  return out;
}

}  // namespace planefit
