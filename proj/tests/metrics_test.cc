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

#include "planefit/metrics.h"

#include <gtest/gtest.h>

#include <cmath>

#include "planefit/synthetic.h"
#include "test_util.h"

namespace planefit {
namespace {

using testing::RandomNormal;
using testing::RandomVec;

GroundTruth Truth(int dim, std::vector<Vec> pts, std::vector<UnitNormal> ns, std::vector<char> mask) {
  GroundTruth t;
  t.cloud = PointCloud(dim, std::move(pts), std::move(ns));
  t.inlier_mask = std::move(mask);
  return t;
}

GroundTruth RandomTruth(Rng& rng, std::size_t n) {
  std::vector<Vec> pts;
  std::vector<UnitNormal> ns;
  std::vector<char> mask;
  for (std::size_t i = 0; i < n; ++i) {
    pts.push_back(RandomVec(rng, 3));
    ns.push_back(RandomNormal(rng, 3));
    mask.push_back(i == 0 || rng.Uniform() < 0.8);
  }
  return Truth(3, pts, ns, mask);
}

std::vector<Hyperplane> RandomPlanes(Rng& rng, int count) {
  std::vector<Hyperplane> planes;
  for (int i = 0; i < count; ++i) {
    Hyperplane h;
    h.id = i;
    h.normal = RandomNormal(rng, 3);
    h.offset = rng.Uniform(-1, 1);
    planes.push_back(h);
  }
  return planes;
}

// Angle between unoriented lines, from the absolute cosine.
double LineAngle(const UnitNormal& a, const UnitNormal& b) {
  return std::acos(std::min(1.0, std::abs(a.vec().Dot(b.vec())))) * 180.0 / M_PI;
}

// Direct segmentation errors over all pairs of points.
ConsistencyErrors ConsistencyOracle(const std::vector<std::int32_t>& a, const std::vector<std::int32_t>& b) {
  const std::size_t n = a.size();
  double s12 = 0, s21 = 0, smin = 0;
  for (std::size_t p = 0; p < n; ++p) {
    double ra = 0, rb = 0, a_not_b = 0, b_not_a = 0;
    for (std::size_t q = 0; q < n; ++q) {
      const bool in_a = a[q] == a[p], in_b = b[q] == b[p];
      ra += in_a;
      rb += in_b;
      a_not_b += in_a && !in_b;
      b_not_a += in_b && !in_a;
    }
    const double e12 = a_not_b / ra, e21 = b_not_a / rb;
    s12 += e12;
    s21 += e21;
    smin += std::min(e12, e21);
  }
  return {std::min(s12, s21) / double(n), smin / double(n)};
}

TEST(NormalRmsError, Examples) {
  const double t = 30.0 * M_PI / 180.0;
  const GroundTruth truth = Truth(3, {Vec(0, 0, 0), Vec(1, 0, 0)},
                                  {UnitNormal::Up(3), UnitNormal::Up(3)}, {1, 1});
  const std::vector<UnitNormal> perfect = truth.cloud.normals();
  EXPECT_EQ(NormalRmsError(perfect, truth), 0.0);
  const std::vector<UnitNormal> off = {Canonicalize(Vec(std::sin(t), 0, std::cos(t))), UnitNormal::Up(3)};
  EXPECT_NEAR(NormalRmsError(off, truth), std::sqrt(900.0 / 2.0), 1e-9);
  EXPECT_NEAR(NormalRmsError(off, truth), 21.213, 1e-3);
}

TEST(NormalRmsError, MatchesOracleAndSkipsOutliers) {
  Rng rng(1);
  for (int trial = 0; trial < 50; ++trial) {
    const GroundTruth truth = RandomTruth(rng, 40);
    std::vector<UnitNormal> rec;
    for (std::size_t i = 0; i < 40; ++i) rec.push_back(RandomNormal(rng, 3));
    double sum = 0;
    int count = 0;
    for (std::size_t i = 0; i < 40; ++i) {
      if (!truth.inlier_mask[i]) continue;
      sum += std::pow(LineAngle(rec[i], truth.cloud.normal(i)), 2);
      ++count;
    }
    EXPECT_NEAR(NormalRmsError(rec, truth), std::sqrt(sum / count), 1e-9);
  }
}

TEST(NormalRmsError, Errors) {
  const GroundTruth truth = Truth(3, {Vec(0, 0, 0)}, {UnitNormal::Up(3)}, {0});
  const std::vector<UnitNormal> rec = {UnitNormal::Up(3)};
  EXPECT_THROW(NormalRmsError(rec, truth), Error);
  EXPECT_THROW(NormalRmsError({}, truth), Error);
}

TEST(PlaneRmsError, Examples) {
  Hyperplane z0;
  const std::vector<Hyperplane> planes = {z0};
  const GroundTruth truth = Truth(3, {Vec(0, 0, 1), Vec(0, 0, -1)},
                                  {UnitNormal::Up(3), UnitNormal::Up(3)}, {1, 1});
  EXPECT_DOUBLE_EQ(PlaneRmsError(truth, planes), 1.0);
  const GroundTruth on = Truth(3, {Vec(3, 1, 0), Vec(-2, 5, 0)},
                               {UnitNormal::Up(3), UnitNormal::Up(3)}, {1, 1});
  EXPECT_EQ(PlaneRmsError(on, planes), 0.0);
  EXPECT_THROW(PlaneRmsError(on, {}), Error);
}

TEST(PlaneRmsError, MatchesOracle) {
  Rng rng(2);
  for (int trial = 0; trial < 50; ++trial) {
    const GroundTruth truth = RandomTruth(rng, 50);
    const auto planes = RandomPlanes(rng, 4);
    double sum = 0;
    std::size_t count = 0;
    for (std::size_t i = 0; i < 50; ++i) {
      if (!truth.inlier_mask[i]) continue;
      double best = 1e300;
      for (const Hyperplane& h : planes) {
        const Vec& p = truth.cloud.point(i);
        best = std::min(best, std::abs(h.normal[0] * p[0] + h.normal[1] * p[1] + h.normal[2] * p[2] - h.offset));
      }
      sum += best * best;
      ++count;
    }
    const double expect = std::sqrt(sum / double(count));
    EXPECT_NEAR(PlaneRmsError(truth, planes), expect, 1e-9);
    EXPECT_NEAR(serial::PlaneRmsError(truth, planes), expect, 1e-9);
  }
}

TEST(ProjectionRmsError, Examples) {
  const GroundTruth truth = Truth(3, {Vec(0, 0, 0), Vec(1, 0, 0)},
                                  {UnitNormal::Up(3), UnitNormal::Up(3)}, {1, 1});
  Hyperplane z0;
  const std::vector<Hyperplane> planes = {z0};
  LabeledCloud same{truth.cloud, {0, 0}};
  EXPECT_EQ(ProjectionRmsError(same, planes, truth), 0.0);
  // One inlier lands exactly on a truth point; the rest are outliers.
  LabeledCloud one{PointCloud(3, {Vec(1, 0, 0.5), Vec(9, 9, 9), Vec(8, 8, 8), Vec(7, 7, 7)}),
                   {0, kOutlier, kOutlier, kOutlier}};
  EXPECT_EQ(ProjectionRmsError(one, planes, truth), 0.0);
  LabeledCloud none{PointCloud(3, {Vec(5, 5, 5)}), {kOutlier}};
  EXPECT_EQ(ProjectionRmsError(none, {}, truth), 0.0);
  LabeledCloud bad{PointCloud(3, {Vec(5, 5, 5)}), {3}};
  EXPECT_THROW(ProjectionRmsError(bad, planes, truth), Error);
}

TEST(ProjectionRmsError, MatchesExhaustiveOracle) {
  Rng rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const GroundTruth truth = RandomTruth(rng, 50);
    const auto planes = RandomPlanes(rng, 3);
    LabeledCloud input;
    input.cloud = PointCloud(3);
    for (int i = 0; i < 30; ++i) {
      input.cloud.AddPoint(RandomVec(rng, 3));
      input.labels.push_back(rng.Uniform() < 0.2 ? kOutlier : std::int32_t(rng.Index(3)));
    }
    double sum = 0;
    for (std::size_t i = 0; i < 30; ++i) {
      if (input.labels[i] == kOutlier) continue;
      const Hyperplane& h = planes[input.labels[i]];
      const Vec& p = input.cloud.point(i);
      const Vec q = p - h.normal.vec() * (h.normal.vec().Dot(p) - h.offset);
      double best = 1e300;
      for (std::size_t j = 0; j < 50; ++j) {
        if (truth.inlier_mask[j]) best = std::min(best, SquaredDistance(q, truth.cloud.point(j)));
      }
      sum += best;
    }
    const double expect = std::sqrt(sum / 30.0);
    EXPECT_NEAR(ProjectionRmsError(input, planes, truth), expect, 1e-9);
    EXPECT_NEAR(serial::ProjectionRmsError(input, planes, truth), expect, 1e-9);
  }
}

TEST(PlaneMetrics, RigidTransformInvariance) {
  Rng rng(4);
  const Vec axis = Vec(1, 2, 2) * (1.0 / 3.0);
  const double angle = 1.1;
  const Vec shift(0.5, -2, 3);
  auto move = [&](const Vec& p) { return testing::Rotate(p, axis, angle) + shift; };
  for (int trial = 0; trial < 20; ++trial) {
    const GroundTruth truth = RandomTruth(rng, 40);
    auto planes = RandomPlanes(rng, 3);
    LabeledCloud input;
    input.cloud = PointCloud(3);
    for (int i = 0; i < 40; ++i) {
      input.cloud.AddPoint(RandomVec(rng, 3));
      input.labels.push_back(std::int32_t(rng.Index(3)));
    }
    GroundTruth t2 = truth;
    std::vector<Vec> tp;
    for (const Vec& p : truth.cloud.points()) tp.push_back(move(p));
    t2.cloud = PointCloud(3, tp, truth.cloud.normals());
    LabeledCloud i2 = input;
    std::vector<Vec> ip;
    for (const Vec& p : input.cloud.points()) ip.push_back(move(p));
    i2.cloud = PointCloud(3, ip);
    auto planes2 = planes;
    for (Hyperplane& h : planes2) {
      const Vec n = testing::Rotate(h.normal.vec(), axis, angle);
      const UnitNormal c = Canonicalize(n);
      const double s = c.vec().Dot(n) > 0 ? 1.0 : -1.0;
      h.normal = c;
      h.offset = s * (h.offset + n.Dot(shift));
    }
    EXPECT_NEAR(PlaneRmsError(truth, planes), PlaneRmsError(t2, planes2), 1e-9);
    EXPECT_NEAR(ProjectionRmsError(input, planes, truth), ProjectionRmsError(i2, planes2, t2), 1e-9);
  }
}

TEST(SegmentConsistency, Examples) {
  const std::vector<std::int32_t> a = {0, 0, 1, 1, 2};
  const ConsistencyErrors same = SegmentConsistency(a, a);
  EXPECT_EQ(same.gce, 0.0);
  EXPECT_EQ(same.lce, 0.0);
  const std::vector<std::int32_t> one = {0, 0, 0, 0}, singles = {0, 1, 2, 3};
  const ConsistencyErrors refine = SegmentConsistency(one, singles);
  EXPECT_EQ(refine.gce, 0.0);
  EXPECT_EQ(refine.lce, 0.0);
  EXPECT_THROW(SegmentConsistency(one, a), Error);
  EXPECT_THROW(SegmentConsistency({}, {}), Error);
}

TEST(SegmentConsistency, MatchesOracleAndProperties) {
  Rng rng(5);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 1 + rng.Index(trial < 200 ? 20 : 50);
    std::vector<std::int32_t> a(n), b(n);
    const int ka = 1 + int(rng.Index(5)), kb = 1 + int(rng.Index(5));
    for (std::size_t i = 0; i < n; ++i) {
      a[i] = std::int32_t(rng.Index(ka)) - 1;
      b[i] = std::int32_t(rng.Index(kb)) - 1;
    }
    const ConsistencyErrors e = SegmentConsistency(a, b);
    const ConsistencyErrors r = SegmentConsistency(b, a);
    const ConsistencyErrors o = ConsistencyOracle(a, b);
    EXPECT_NEAR(e.gce, o.gce, 1e-9);
    EXPECT_NEAR(e.lce, o.lce, 1e-9);
    EXPECT_LE(e.lce, e.gce + 1e-12);
    EXPECT_NEAR(e.gce, r.gce, 1e-12);
    EXPECT_NEAR(e.lce, r.lce, 1e-12);
    EXPECT_GE(e.lce, 0.0);
    EXPECT_LE(e.gce, 1.0);
  }
}

TEST(GroundTruth, Validation) {
  GroundTruth t = Truth(3, {Vec(0, 0, 0)}, {UnitNormal::Up(3)}, {1, 0});
  EXPECT_THROW(t.Validate(), Error);
  t.inlier_mask = {1};
  EXPECT_NO_THROW(t.Validate());
  t.labels = std::vector<std::int32_t>{0, 1};
  EXPECT_THROW(t.Validate(), Error);
}

TEST(Metrics, PerfectSyntheticReconstructionIsZero) {
  const SyntheticScene s = SamplePolyhedron(Polyhedron::kCube, 3000, 0.0, 1);
  EXPECT_EQ(NormalRmsError(s.truth.cloud.normals(), s.truth), 0.0);
  std::vector<Hyperplane> planes;
  LabeledCloud labeled{s.cloud, *s.truth.labels};
  for (int face = 0; face < 6; ++face) {
    Hyperplane h;
    h.id = face;
    for (std::size_t i = 0; i < s.cloud.size(); ++i) {
      if ((*s.truth.labels)[i] == face) {
        h.normal = s.truth.cloud.normal(i);
        h.offset = h.normal.vec().Dot(s.cloud.point(i));
        break;
      }
    }
    planes.push_back(h);
  }
  EXPECT_LT(PlaneRmsError(s.truth, planes), 1e-12);
  EXPECT_LT(ProjectionRmsError(labeled, planes, s.truth), 1e-12);
}

}  // namespace
}  // namespace planefit
