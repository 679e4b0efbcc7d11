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

#include "planefit/io.h"

#include <gtest/gtest.h>

#include "planefit/synthetic.h"
#include "test_util.h"

namespace planefit {
namespace {

using testing::TempDir;

void ExpectSameCloud(const PointCloud& a, const PointCloud& b) {
  ASSERT_EQ(a.size(), b.size());
  EXPECT_EQ(a.dim(), b.dim());
  EXPECT_EQ(a.points(), b.points());
  ASSERT_EQ(a.has_normals(), b.has_normals());
  if (a.has_normals()) {
    EXPECT_EQ(a.normals(), b.normals());
  }
}

TEST(ReadXyz, PlainPoints) {
  TempDir dir("xyz");
  WriteTextFile(dir.path() / "a.xyz", "# header\n0 0 0\n1 0 0\n\n");
  const PointCloud c = ReadXyz(dir.path() / "a.xyz", 3);
  EXPECT_EQ(c.size(), 2u);
  EXPECT_FALSE(c.has_normals());
  EXPECT_EQ(c.point(1), Vec(1, 0, 0));
}

TEST(ReadXyz, NormalsAreCanonicalized) {
  TempDir dir("xyzn");
  WriteTextFile(dir.path() / "a.xyz", "0 0 0 0 0 -2\n1 1 1 -1 0 0\n");
  const PointCloud c = ReadXyz(dir.path() / "a.xyz", 3);
  ASSERT_TRUE(c.has_normals());
  EXPECT_EQ(c.normal(0), UnitNormal::Up(3));
  EXPECT_EQ(c.normal(1), Canonicalize(Vec(1, 0, 0)));
}

TEST(ReadXyz, Errors) {
  TempDir dir("xyzbad");
  WriteTextFile(dir.path() / "bad.xyz", "0 0 0\n1 zero 0\n");
  try {
    ReadXyz(dir.path() / "bad.xyz", 3);
    FAIL() << "no error";
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find(":2"), std::string::npos) << e.what();
  }
  WriteTextFile(dir.path() / "mixed.xyz", "0 0 0\n1 0 0 0 0 1\n");
  EXPECT_THROW(ReadXyz(dir.path() / "mixed.xyz", 3), Error);
  WriteTextFile(dir.path() / "arity.xyz", "0 0 0 1\n");
  EXPECT_THROW(ReadXyz(dir.path() / "arity.xyz", 3), Error);
  WriteTextFile(dir.path() / "zero.xyz", "0 0 0 0 0 0\n");
  EXPECT_THROW(ReadXyz(dir.path() / "zero.xyz", 3), Error);
  EXPECT_THROW(ReadXyz(dir.path() / "missing.xyz", 3), Error);
}

TEST(ReadXyz, TwoDimensional) {
  TempDir dir("xy");
  WriteTextFile(dir.path() / "a.xy", "0 1\n2 3\n");
  const PointCloud c = ReadXyz(dir.path() / "a.xy", 2);
  EXPECT_EQ(c.dim(), 2);
  EXPECT_EQ(c.point(1), Vec(2, 3));
}

TEST(CloudRoundTrip, AsciiAndBinaryAreExact) {
  Rng rng(1);
  TempDir dir("rt");
  for (int dim : {2, 3}) {
    for (bool normals : {false, true}) {
      const PointCloud c = testing::RandomCloud(rng, dim, 300, normals);
      WriteXyz(dir.path() / "c.xyz", c);
      ExpectSameCloud(ReadXyz(dir.path() / "c.xyz", dim), c);
      WritePly(dir.path() / "a.ply", c, PlyEncoding::kAscii);
      ExpectSameCloud(ReadPly(dir.path() / "a.ply", dim), c);
      WritePly(dir.path() / "b.ply", c, PlyEncoding::kBinaryLittleEndian);
      ExpectSameCloud(ReadPly(dir.path() / "b.ply", dim), c);
      WriteCloud(dir.path() / "w.ply", c);
      ExpectSameCloud(ReadCloud(dir.path() / "w.ply", dim), c);
    }
  }
}

TEST(ReadPly, FloatPropertiesAndExtraElements) {
  TempDir dir("ply");
  WriteTextFile(dir.path() / "a.ply",
                "ply\nformat ascii 1.0\ncomment test\nelement vertex 2\n"
                "property float x\nproperty float y\nproperty float z\n"
                "property uchar red\n"
                "property float nx\nproperty float ny\nproperty float nz\n"
                "element face 1\nproperty list uchar int vertex_indices\nend_header\n"
                "0 0 0 255 0 0 -1\n1 2 3 0 0 -1 0\n3 0 1 1\n");
  const PointCloud c = ReadPly(dir.path() / "a.ply", 3);
  ASSERT_EQ(c.size(), 2u);
  ASSERT_TRUE(c.has_normals());
  EXPECT_EQ(c.normal(0), UnitNormal::Up(3));
  EXPECT_EQ(c.normal(1), Canonicalize(Vec(0, 1, 0)));
  EXPECT_EQ(c.point(1), Vec(1, 2, 3));
}

TEST(ReadPly, Errors) {
  TempDir dir("plybad");
  WriteTextFile(dir.path() / "nox.ply",
                "ply\nformat ascii 1.0\nelement vertex 1\nproperty float y\nend_header\n1\n");
  EXPECT_THROW(ReadPly(dir.path() / "nox.ply", 3), Error);
  WriteTextFile(dir.path() / "short.ply",
                "ply\nformat ascii 1.0\nelement vertex 2\nproperty float x\nproperty float y\n"
                "property float z\nend_header\n1 2 3\n");
  EXPECT_THROW(ReadPly(dir.path() / "short.ply", 3), Error);
  WriteTextFile(dir.path() / "big.ply",
                "ply\nformat binary_big_endian 1.0\nelement vertex 0\nend_header\n");
  EXPECT_THROW(ReadPly(dir.path() / "big.ply", 3), Error);
  WriteTextFile(dir.path() / "junk.ply", "not a ply\n");
  EXPECT_THROW(ReadPly(dir.path() / "junk.ply", 3), Error);
}

TEST(Planes, LineFormat) {
  TempDir dir("planes");
  Hyperplane h;
  h.normal = UnitNormal::Up(3);
  h.offset = 2.0;
  h.support = {0, 1, 2, 3, 4};
  const std::vector<Hyperplane> planes = {h};
  WritePlanes(dir.path() / "planes.txt", planes, 3);
  EXPECT_EQ(ReadTextFile(dir.path() / "planes.txt"), "0 0 0 1 2 5\n");
  const auto back = ReadPlanes(dir.path() / "planes.txt", 3);
  ASSERT_EQ(back.size(), 1u);
  EXPECT_EQ(back[0].normal, h.normal);
  EXPECT_EQ(back[0].offset, 2.0);
  EXPECT_EQ(back[0].support.size(), 5u);
  WritePlanes(dir.path() / "empty.txt", {}, 3);
  EXPECT_EQ(ReadTextFile(dir.path() / "empty.txt"), "");
  EXPECT_TRUE(ReadPlanes(dir.path() / "empty.txt", 3).empty());
}

TEST(Labels, RoundTrip) {
  TempDir dir("labels");
  const std::vector<std::int32_t> labels = {-1, 0, 3, 2, -1};
  WriteLabels(dir.path() / "labels.txt", labels);
  EXPECT_EQ(ReadTextFile(dir.path() / "labels.txt"), "-1\n0\n3\n2\n-1\n");
  EXPECT_EQ(ReadLabels(dir.path() / "labels.txt"), labels);
  WriteTextFile(dir.path() / "bad.txt", "1\nx\n");
  EXPECT_THROW(ReadLabels(dir.path() / "bad.txt"), Error);
}

TEST(Normals, RoundTrip) {
  Rng rng(2);
  TempDir dir("normals");
  std::vector<UnitNormal> ns;
  for (int i = 0; i < 50; ++i) ns.push_back(testing::RandomNormal(rng, 3));
  WriteNormals(dir.path() / "n.txt", ns);
  EXPECT_EQ(ReadNormals(dir.path() / "n.txt", 3), ns);
}

TEST(Truth, RoundTrip) {
  TempDir dir("truth");
  for (const SyntheticScene& s : {GenerateLines2d(20, 0.01, 0.3, 1),
                                  SamplePolyhedron(Polyhedron::kDodecahedron, 500, 0.01, 2)}) {
    WriteTruth(dir.path() / "truth.txt", s.truth);
    const GroundTruth t = ReadTruth(dir.path() / "truth.txt");
    ExpectSameCloud(t.cloud, s.truth.cloud);
    EXPECT_EQ(t.labels, s.truth.labels);
    EXPECT_EQ(t.inlier_mask, s.truth.inlier_mask);
  }
}

TEST(SegmentsPly, RoundTrip) {
  TempDir dir("seg");
  Rng rng(3);
  LabeledCloud lc{testing::RandomCloud(rng, 3, 100, false), {}};
  for (int i = 0; i < 100; ++i) lc.labels.push_back(std::int32_t(rng.Index(5)) - 1);
  WriteSegmentsPly(dir.path() / "s.ply", lc);
  const LabeledCloud back = ReadSegmentsPly(dir.path() / "s.ply", 3);
  EXPECT_EQ(back.labels, lc.labels);
  EXPECT_EQ(back.cloud.points(), lc.cloud.points());
  // The same file remains a readable point cloud.
  EXPECT_EQ(ReadPly(dir.path() / "s.ply", 3).size(), 100u);
}

TEST(WriteOutputs, EmptyExtraction) {
  TempDir dir("out");
  PlaneExtraction e;
  e.labeled.cloud = PointCloud(3, {Vec(0, 0, 0), Vec(1, 1, 1)});
  e.labeled.labels = {kOutlier, kOutlier};
  const std::vector<UnitNormal> ns(2, UnitNormal::Up(3));
  WriteOutputs(dir.path() / "nested", e, ns, "{}\n");
  EXPECT_EQ(ReadTextFile(dir.path() / "nested" / "planes.txt"), "");
  EXPECT_EQ(ReadTextFile(dir.path() / "nested" / "labels.txt"), "-1\n-1\n");
  EXPECT_EQ(ReadTextFile(dir.path() / "nested" / "report.json"), "{}\n");
  EXPECT_TRUE(std::filesystem::exists(dir.path() / "nested" / "segments.ply"));
  EXPECT_EQ(ReadNormals(dir.path() / "nested" / "normals.txt", 3), ns);
}

TEST(ReadObjMesh, TrianglesAndPolygons) {
  TempDir dir("obj");
  WriteTextFile(dir.path() / "m.obj",
                "# quad and triangle\nv 0 0 0\nv 1 0 0\nv 1 1 0\nv 0 1 0\nvn 0 0 1\n"
                "f 1//1 2//1 3//1 4//1\nf -4 -3 -1\n");
  const TriangleMesh m = ReadObjMesh(dir.path() / "m.obj");
  EXPECT_EQ(m.vertices.size(), 4u);
  ASSERT_EQ(m.triangles.size(), 3u);
  EXPECT_EQ(m.triangles[2], (std::array<std::uint32_t, 3>{0, 1, 3}));
  WriteTextFile(dir.path() / "bad.obj", "v 0 0 0\nf 1 2 9\n");
  EXPECT_THROW(ReadObjMesh(dir.path() / "bad.obj"), Error);
}

}  // namespace
}  // namespace planefit
