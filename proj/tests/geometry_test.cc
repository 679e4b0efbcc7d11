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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "planefit/kdtree.h"
#include "planefit/knn_graph.h"
#include "planefit/normals.h"
#include "planefit/parallel.h"
#include "test_util.h"

namespace planefit {
namespace {

using testing::RandomCloud;

// Exhaustive k nearest by (distance, index).
std::vector<PointIndex> BruteNearest(const PointCloud& c, std::size_t i, int k) {
  std::vector<Neighbor> all;
  for (std::size_t j = 0; j < c.size(); ++j) {
    if (j == i) continue;
    all.push_back({static_cast<PointIndex>(j), SquaredDistance(c.point(i), c.point(j))});
  }
  std::sort(all.begin(), all.end());
  std::vector<PointIndex> out;
  for (int t = 0; t < k; ++t) out.push_back(all[t].index);
  return out;
}

TEST(KnnGraph, CollinearPathIsSymmetrized) {
  const PointCloud c(2, {Vec(0, 0), Vec(1, 0), Vec(2, 0)});
  const NeighborGraph g = BuildKnnGraph(c, 1);
  EXPECT_EQ(g.neighbors(1).size(), 2u);
  EXPECT_EQ(g.neighbors(0).size(), 1u);
  EXPECT_EQ(g.neighbors(2).size(), 1u);
}

TEST(KnnGraph, SquareCornersLinkEdgeNeighborsOnly) {
  const PointCloud c(2, {Vec(0, 0), Vec(1, 0), Vec(1, 1), Vec(0, 1)});
  const NeighborGraph g = BuildKnnGraph(c, 2);
  const std::vector<std::vector<PointIndex>> expect = {{1, 3}, {0, 2}, {1, 3}, {0, 2}};
  for (std::size_t i = 0; i < 4; ++i) {
    const auto n = g.neighbors(i);
    EXPECT_EQ(std::vector<PointIndex>(n.begin(), n.end()), expect[i]) << "corner " << i;
  }
  EXPECT_EQ(g.edge_count(), 4u);
}

TEST(KnnGraph, MatchesBruteForceOracle) {
  Rng rng(42);
  for (int dim : {2, 3}) {
    const PointCloud c = RandomCloud(rng, dim, 1000, false);
    const auto lists = KnnLists(c, 10);
    for (std::size_t i = 0; i < c.size(); ++i) {
      ASSERT_EQ(lists[i], BruteNearest(c, i, 10)) << "point " << i << " dim " << dim;
    }
  }
}

TEST(KnnGraph, TiesResolveToLowerIndex) {
  // Points 1..4 are all at distance 1 from point 0.
  const PointCloud c(2, {Vec(0, 0), Vec(0, 1), Vec(1, 0), Vec(0, -1), Vec(-1, 0), Vec(5, 5)});
  const auto lists = KnnLists(c, 2);
  EXPECT_EQ(lists[0], (std::vector<PointIndex>{1, 2}));
}

TEST(KnnGraph, InvariantsHold) {
  Rng rng(7);
  const PointCloud c = RandomCloud(rng, 3, 500, false);
  const NeighborGraph g = BuildKnnGraph(c, 8);
  std::size_t directed = 0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto n = g.neighbors(i);
    EXPECT_GE(n.size(), 8u);
    EXPECT_TRUE(std::is_sorted(n.begin(), n.end()));
    EXPECT_EQ(std::adjacent_find(n.begin(), n.end()), n.end());
    for (PointIndex j : n) {
      EXPECT_NE(j, i);
      const auto m = g.neighbors(j);
      EXPECT_TRUE(std::binary_search(m.begin(), m.end(), static_cast<PointIndex>(i)));
    }
    directed += n.size();
  }
  EXPECT_EQ(directed, 2 * g.edge_count());
}

TEST(KnnGraph, SizeErrors) {
  const PointCloud c(3, {Vec(0, 0, 0), Vec(1, 0, 0)});
  EXPECT_THROW(BuildKnnGraph(c, 2), Error);
  EXPECT_THROW(BuildKnnGraph(c, 0), Error);
  EXPECT_NO_THROW(BuildKnnGraph(c, 1));
}

TEST(KnnGraph, ParallelMatchesSerial) {
  Rng rng(8);
  const PointCloud c = RandomCloud(rng, 3, 3000, false);
  EXPECT_EQ(KnnLists(c, 12), serial::KnnLists(c, 12));
}

TEST(KdTree, HandlesDuplicatesAndSmallTrees) {
  std::vector<Vec> pts(40, Vec(1, 1, 1));
  pts.push_back(Vec(2, 2, 2));
  const KdTree tree(pts, 3);
  const auto nn = tree.Nearest(Vec(1, 1, 1), 5);
  ASSERT_EQ(nn.size(), 5u);
  for (std::size_t i = 0; i < 5; ++i) EXPECT_EQ(nn[i].index, i);
  EXPECT_EQ(tree.Nearest(Vec(0, 0, 0), 100).size(), pts.size());
  EXPECT_EQ(tree.Nearest(Vec(2, 2, 2), 1, 40)[0].index, 0u);
}

TEST(Normals, PlaneZEqualsZero) {
  Rng rng(1);
  std::vector<Vec> pts;
  for (int i = 0; i < 300; ++i) pts.push_back(Vec(rng.Uniform(), rng.Uniform(), 0.0));
  const PointCloud c(3, pts);
  const NormalEstimate est = EstimateNormalsPca(c, BuildKnnGraph(c, 10));
  EXPECT_EQ(est.degenerate_count, 0u);
  for (const UnitNormal& n : est.cloud.normals()) {
    EXPECT_NEAR(n[2], 1.0, 1e-12);
    EXPECT_NEAR(n[0], 0.0, 1e-6);
  }
}

TEST(Normals, LineYEqualsX) {
  std::vector<Vec> pts;
  for (int i = 0; i < 50; ++i) pts.push_back(Vec(0.1 * i, 0.1 * i));
  const PointCloud c(2, pts);
  const NormalEstimate est = EstimateNormalsPca(c, BuildKnnGraph(c, 6));
  for (const UnitNormal& n : est.cloud.normals()) {
    EXPECT_NEAR(n[0], -std::sqrt(0.5), 1e-9);
    EXPECT_NEAR(n[1], std::sqrt(0.5), 1e-9);
  }
}

TEST(Normals, NoisyTiltedPlane) {
  Rng rng(3);
  const Vec u = Vec(1, -1, 0) * (1.0 / std::sqrt(2.0));
  const Vec v = Vec(1, 1, -2) * (1.0 / std::sqrt(6.0));
  const Vec n = Vec(1, 1, 1) * (1.0 / std::sqrt(3.0));
  std::vector<Vec> pts;
  std::vector<char> interior;
  for (int i = 0; i < 2000; ++i) {
    const double a = rng.Uniform(), b = rng.Uniform();
    pts.push_back(n * (1.0 / std::sqrt(3.0)) + u * (8.0 * a) + v * (8.0 * b) + n * (0.001 * rng.Normal()));
    interior.push_back(a > 0.1 && a < 0.9 && b > 0.1 && b < 0.9);
  }
  const PointCloud c(3, pts);
  const NormalEstimate est = EstimateNormalsPca(c, BuildKnnGraph(c, 10));
  const UnitNormal truth = Canonicalize(n);
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (interior[i]) {
      EXPECT_LT(AngleDegrees(est.cloud.normal(i), truth), 1.0) << i;
    }
  }
}

TEST(Normals, DegenerateNeighborhoodGetsUpAndIsCounted) {
  std::vector<Vec> pts(6, Vec(1, 2, 3));
  pts.push_back(Vec(5, 5, 5));
  pts.push_back(Vec(6, 5, 5));
  pts.push_back(Vec(5, 6, 5));
  const PointCloud c(3, pts);
  const NormalEstimate est = EstimateNormalsPca(c, 3);
  EXPECT_GE(est.degenerate_count, 6u);
  EXPECT_EQ(est.cloud.normal(0), UnitNormal::Up(3));
}

TEST(Normals, RotationInvariant) {
  Rng rng(9);
  std::vector<Vec> pts;
  for (int i = 0; i < 800; ++i) {
    const double a = rng.Uniform(0, 2 * std::numbers::pi), h = rng.Uniform(-1, 1);
    pts.push_back(Vec(std::cos(a), std::sin(a), h) + testing::RandomVec(rng, 3, -0.01, 0.01));
  }
  const PointCloud c(3, pts);
  const Vec axis = Vec(0.3, -0.5, 0.8) * (1.0 / Vec(0.3, -0.5, 0.8).Norm());
  const double angle = 0.7;
  std::vector<Vec> rotated;
  for (const Vec& p : pts) rotated.push_back(testing::Rotate(p, axis, angle));
  const PointCloud rc(3, rotated);
  const NormalEstimate a = EstimateNormalsPca(c, BuildKnnGraph(c, 10));
  const NormalEstimate b = EstimateNormalsPca(rc, BuildKnnGraph(rc, 10));
  for (std::size_t i = 0; i < c.size(); ++i) {
    const UnitNormal expect = Canonicalize(testing::Rotate(a.cloud.normal(i).vec(), axis, angle));
    // Chord length, which resolves far smaller angles than arccos.
    EXPECT_LT(std::sqrt(AxialSquaredDistance(expect, b.cloud.normal(i))), 1e-9) << i;
  }
}

TEST(Normals, ParallelMatchesSerial) {
  Rng rng(10);
  const PointCloud c = RandomCloud(rng, 3, 2000, false);
  const NeighborGraph g = BuildKnnGraph(c, 10);
  EXPECT_EQ(EstimateNormalsPca(c, g).cloud.normals(), serial::EstimateNormalsPca(c, g).cloud.normals());
  EXPECT_EQ(EstimateNormalsPca(c, 25).cloud.normals(), serial::EstimateNormalsPca(c, 25).cloud.normals());
}

TEST(Parallel, ThreadCapOverride) {
  SetMaxThreads(1);
  EXPECT_EQ(MaxThreads(), 1);
  SetMaxThreads(0);
  EXPECT_GE(MaxThreads(), 1);
}

}  // namespace
}  // namespace planefit
