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

#include "planefit/normals.h"

#include <Eigen/Dense>
#include <algorithm>
#include <vector>

#include "planefit/kdtree.h"
#include "planefit/parallel.h"

namespace planefit {

bool PcaNormal(std::span<const Vec> points, int dim, UnitNormal& out) {
  if (points.empty()) return false;
  Eigen::Vector3d mean = Eigen::Vector3d::Zero();
  for (const Vec& p : points) mean += Eigen::Vector3d(p[0], p[1], p[2]);
  mean /= static_cast<double>(points.size());
  Eigen::Matrix3d cov = Eigen::Matrix3d::Zero();
  for (const Vec& p : points) {
    const Eigen::Vector3d d = Eigen::Vector3d(p[0], p[1], p[2]) - mean;
    cov.noalias() += d * d.transpose();
  }
  if (cov.trace() <= 1e-20 * (1.0 + mean.squaredNorm())) return false;

  Vec raw = Vec::Zero(dim);
  if (dim == 2) {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(cov.topLeftCorner<2, 2>());
    raw[0] = es.eigenvectors()(0, 0);
    raw[1] = es.eigenvectors()(1, 0);
  } else {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(cov);
    for (int d = 0; d < 3; ++d) raw[d] = es.eigenvectors()(d, 0);
  }
  out = Canonicalize(raw);
  return true;
}

namespace {

// Shared per-point body; `gather` fills the neighborhood for point i.
// `parallel` selects the OpenMP loop; the plain loop is the serial reference.
template <typename Gather>
NormalEstimate Estimate(const PointCloud& cloud, Gather&& gather,
                        bool parallel) {
  const UnitNormal up = UnitNormal::Up(cloud.dim());
  std::vector<UnitNormal> normals(cloud.size(), up);
  std::size_t degenerate = 0;
  if (parallel) {
    const auto n = static_cast<std::ptrdiff_t>(cloud.size());
#pragma omp parallel num_threads(MaxThreads()) reduction(+ : degenerate)
    {
      std::vector<Vec> hood;
      std::vector<Neighbor> scratch;
#pragma omp for schedule(static)
      for (std::ptrdiff_t i = 0; i < n; ++i) {
        gather(static_cast<std::size_t>(i), hood, scratch);
        if (!PcaNormal(hood, cloud.dim(), normals[i])) ++degenerate;
      }
    }
  } else {
    std::vector<Vec> hood;
    std::vector<Neighbor> scratch;
    for (std::size_t i = 0; i < cloud.size(); ++i) {
      gather(i, hood, scratch);
      if (!PcaNormal(hood, cloud.dim(), normals[i])) ++degenerate;
    }
  }
  PointCloud out(cloud.dim(), cloud.points());
  out.SetNormals(std::move(normals));
  return {std::move(out), degenerate};
}

NormalEstimate FromGraph(const PointCloud& cloud, const NeighborGraph& graph,
                         bool parallel) {
  if (graph.size() != cloud.size()) {
    throw Error("neighbor graph does not match the cloud");
  }
  return Estimate(
      cloud,
      [&](std::size_t i, std::vector<Vec>& hood, std::vector<Neighbor>&) {
        hood.clear();
        hood.push_back(cloud.point(i));
        for (PointIndex j : graph.neighbors(i)) hood.push_back(cloud.point(j));
      },
      parallel);
}

NormalEstimate FromKnn(const PointCloud& cloud, int k, bool parallel) {
  if (k < 1 || cloud.size() < static_cast<std::size_t>(k) + 1) {
    throw Error("normal estimation needs at least k + 1 points");
  }
  const KdTree tree(cloud.points(), cloud.dim());
  return Estimate(
      cloud,
      [&](std::size_t i, std::vector<Vec>& hood,
          std::vector<Neighbor>& scratch) {
        tree.Nearest(cloud.point(i), static_cast<std::size_t>(k),
                     static_cast<PointIndex>(i), scratch);
        hood.clear();
        hood.push_back(cloud.point(i));
        for (const Neighbor& nb : scratch) hood.push_back(cloud.point(nb.index));
      },
      parallel);
}

}  // namespace

NormalEstimate EstimateNormalsPca(const PointCloud& cloud,
                                  const NeighborGraph& graph) {
  return FromGraph(cloud, graph, true);
}

NormalEstimate EstimateNormalsPca(const PointCloud& cloud, int k) {
  return FromKnn(cloud, k, true);
}

namespace serial {

NormalEstimate EstimateNormalsPca(const PointCloud& cloud,
                                  const NeighborGraph& graph) {
  return FromGraph(cloud, graph, false);
}

NormalEstimate EstimateNormalsPca(const PointCloud& cloud, int k) {
  return FromKnn(cloud, k, false);
}

}  // namespace serial
}  // namespace planefit
