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

#include "planefit/vec.h"

#include <gtest/gtest.h>

#include <cmath>

#include "planefit/point_cloud.h"
#include "test_util.h"

namespace planefit {
namespace {

using testing::RandomNormal;

void ExpectVec(const UnitNormal& n, double x, double y, double z) {
  EXPECT_NEAR(n[0], x, 1e-15);
  EXPECT_NEAR(n[1], y, 1e-15);
  EXPECT_NEAR(n[2], z, 1e-15);
}

TEST(Canonicalize, FlipsAndNormalizes) { ExpectVec(Canonicalize(Vec(0, 0, -2)), 0, 0, 1); }

TEST(Canonicalize, HorizonKeepsPositiveFirstComponent) {
  ExpectVec(Canonicalize(Vec(3, 4, 0)), 0.6, 0.8, 0);
}

TEST(Canonicalize, HorizonFlip) { ExpectVec(Canonicalize(Vec(-1, 0, 0)), 1, 0, 0); }

TEST(Canonicalize, HorizonToleranceUsesFirstNonzeroComponent) {
  const UnitNormal n = Canonicalize(Vec(0, -1, 1e-13));
  EXPECT_GT(n[1], 0.0);
  const UnitNormal m = Canonicalize(Vec(0, -1, 1e-9));
  EXPECT_LT(m[1], 0.0);
  EXPECT_GT(m[2], 0.0);
}

TEST(Canonicalize, TwoDimensionalUsesLastAxis) {
  const UnitNormal n = Canonicalize(Vec(1, -1));
  EXPECT_EQ(n.dim(), 2);
  EXPECT_NEAR(n[0], -std::sqrt(0.5), 1e-15);
  EXPECT_NEAR(n[1], std::sqrt(0.5), 1e-15);
}

TEST(Canonicalize, RejectsZeroAndNonFinite) {
  EXPECT_THROW(Canonicalize(Vec(0, 0, 0)), Error);
  EXPECT_THROW(Canonicalize(Vec(NAN, 0, 1)), Error);
  EXPECT_THROW(Canonicalize(Vec(INFINITY, 0, 1)), Error);
}

TEST(Canonicalize, IsIdempotentAndUnit) {
  Rng rng(11);
  for (int dim : {2, 3}) {
    for (int i = 0; i < 2000; ++i) {
      const UnitNormal n = RandomNormal(rng, dim);
      EXPECT_NEAR(n.vec().Norm(), 1.0, 1e-12);
      EXPECT_EQ(Canonicalize(n.vec()), n);
      EXPECT_EQ(Canonicalize(-n.vec()), n);
    }
  }
}

TEST(Canonicalize, NoNegativeZeros) {
  const UnitNormal n = Canonicalize(Vec(-0.0, -0.0, -1.0));
  EXPECT_FALSE(std::signbit(n[0]));
  EXPECT_FALSE(std::signbit(n[1]));
}

TEST(Angle, Examples) {
  const UnitNormal x = Canonicalize(Vec(1, 0, 0));
  const UnitNormal y = Canonicalize(Vec(0, 1, 0));
  const UnitNormal d = Canonicalize(Vec(std::sqrt(0.5), std::sqrt(0.5), 0));
  EXPECT_DOUBLE_EQ(AngleDegrees(x, x), 0.0);
  EXPECT_NEAR(AngleDegrees(x, y), 90.0, 1e-12);
  EXPECT_NEAR(AngleDegrees(x, d), 45.0, 1e-12);
}

TEST(Angle, SymmetricAndTriangleInequality) {
  Rng rng(5);
  for (int i = 0; i < 5000; ++i) {
    const UnitNormal a = RandomNormal(rng, 3), b = RandomNormal(rng, 3), c = RandomNormal(rng, 3);
    EXPECT_DOUBLE_EQ(AngleDegrees(a, b), AngleDegrees(b, a));
    EXPECT_LE(AngleDegrees(a, c), AngleDegrees(a, b) + AngleDegrees(b, c) + 1e-9);
    EXPECT_DOUBLE_EQ(AxialAngleDegrees(a, b), AxialAngleDegrees(b, a));
    EXPECT_LE(AxialAngleDegrees(a, c), AxialAngleDegrees(a, b) + AxialAngleDegrees(b, c) + 1e-9);
    EXPECT_GE(AngleDegrees(a, b), 0.0);
    EXPECT_LE(AngleDegrees(a, b), 180.0);
  }
}

TEST(Angle, AxialFoldsAntipodes) {
  const UnitNormal a = Canonicalize(Vec(1, 0, 1e-3));
  const UnitNormal b = Canonicalize(Vec(-1, 0, 1e-3));
  EXPECT_GT(AngleDegrees(a, b), 179.0);
  EXPECT_NEAR(AxialAngleDegrees(a, b), 2.0 * std::atan(1e-3) * 180.0 / M_PI, 1e-9);
}

TEST(AxialSquaredDistance, MatchesMinimumOfBothSigns) {
  Rng rng(3);
  for (int i = 0; i < 1000; ++i) {
    const UnitNormal a = RandomNormal(rng, 3), b = RandomNormal(rng, 3);
    const double direct = std::min(SquaredDistance(a.vec(), b.vec()),
                                   SquaredDistance(a.vec(), -b.vec()));
    EXPECT_NEAR(AxialSquaredDistance(a, b), direct, 1e-15);
    EXPECT_LE(AxialSquaredDistance(a, b), 2.0 + 1e-15);
  }
}

TEST(PointCloud, ChecksDimensionsAndNormals) {
  EXPECT_THROW(PointCloud(4), Error);
  EXPECT_THROW(PointCloud(3, {Vec(0, 0, 0), Vec(1, 0)}), Error);
  EXPECT_THROW(PointCloud(3, {Vec(0, 0, 0)}, {}), Error);
  PointCloud c(2, {Vec(0, 0), Vec(2, 1)});
  EXPECT_EQ(c.size(), 2u);
  EXPECT_FALSE(c.has_normals());
  EXPECT_NEAR(c.BoundingDiagonal(), std::sqrt(5.0), 1e-15);
  EXPECT_THROW(c.SetNormals({UnitNormal::Up(2)}), Error);
  c.SetNormals({UnitNormal::Up(2), UnitNormal::Up(2)});
  EXPECT_TRUE(c.has_normals());
  EXPECT_THROW(c.AddPoint(Vec(0, 1)), Error);
}

}  // namespace
}  // namespace planefit
