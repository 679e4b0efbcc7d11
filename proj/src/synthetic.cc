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

#include "planefit/synthetic.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <utility>

#include "planefit/random.h"

namespace planefit {
namespace {

struct Segment {
  Vec a, b;
  Vec dir;  // b - a, exact and shared by parallel segments
};

std::vector<Segment> LineSegments() {
  std::vector<Segment> segs = {
      {Vec(0, 0), Vec(1, 0), Vec(1, 0)},
      {Vec(1, 0), Vec(1, 1), Vec(0, 1)},
      {Vec(1, 1), Vec(0, 1), Vec(-1, 0)},
      {Vec(0, 1), Vec(0, 0), Vec(0, -1)},
  };
  const double run = 0.8 / std::numbers::sqrt2;
  for (int i = 0; i < 4; ++i) {
    const Vec start(1.3 + 0.25 * i, 0.2);
    segs.push_back({start, start + Vec(run, run), Vec(run, run)});
  }
  return segs;
}

std::pair<Vec, Vec> GrownBox(Vec lo, Vec hi, int dim) {
  for (int d = 0; d < dim; ++d) {
    const double pad = 0.05 * (hi[d] - lo[d]);
    lo[d] -= pad;
    hi[d] += pad;
  }
  return {lo, hi};
}

Vec UniformInBox(Rng& rng, const Vec& lo, const Vec& hi, int dim) {
  Vec p = Vec::Zero(dim);
  for (int d = 0; d < dim; ++d) p[d] = rng.Uniform(lo[d], hi[d]);
  return p;
}

std::pair<Vec, Vec> BoundsOf(const std::vector<Vec>& pts, int dim) {
  PointCloud c(dim, pts);
  return c.Bounds();
}

// Concatenates inliers and outliers into a scene.
SyntheticScene Assemble(int dim, std::vector<Vec> noisy, std::vector<Vec> clean,
                        std::vector<UnitNormal> normals,
                        std::vector<std::int32_t> labels,
                        const std::vector<Vec>& outliers, SceneParams params) {
  const std::size_t inliers = noisy.size();
  std::vector<char> mask(inliers, 1);
  for (const Vec& o : outliers) {
    noisy.push_back(o);
    clean.push_back(o);
    normals.push_back(UnitNormal::Up(dim));
    labels.push_back(-1);
    mask.push_back(0);
  }
  SyntheticScene s;
  s.cloud = PointCloud(dim, std::move(noisy));
  s.truth.cloud = PointCloud(dim, std::move(clean), std::move(normals));
  s.truth.labels = std::move(labels);
  s.truth.inlier_mask = std::move(mask);
  params.outliers = outliers.size();
  const double total = static_cast<double>(s.cloud.size());
  params.outlier_fraction = total > 0 ? static_cast<double>(outliers.size()) / total : 0.0;
  s.params = std::move(params);
  return s;
}

Vec TriangleNormalRaw(const TriangleMesh& m, std::size_t t) {
  const auto& tri = m.triangles[t];
  const Vec u = m.vertices[tri[1]] - m.vertices[tri[0]];
  const Vec v = m.vertices[tri[2]] - m.vertices[tri[0]];
  return Vec(u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2],
             u[0] * v[1] - u[1] * v[0]);
}

}  // namespace

double Lines2dExtent() {
  std::vector<Vec> ends;
  for (const Segment& s : LineSegments()) {
    ends.push_back(s.a);
    ends.push_back(s.b);
  }
  const auto [lo, hi] = BoundsOf(ends, 2);
  return Distance(lo, hi);
}

SyntheticScene GenerateLines2d(int points_per_line, double sigma, double rho,
                               std::uint64_t seed) {
  if (!(rho >= 0.0 && rho < 1.0)) {
    throw Error("outlier fraction must lie in [0, 1)");
  }
  if (points_per_line < 1) throw Error("points_per_line must be positive");
  if (!(sigma >= 0.0)) throw Error("sigma must be non-negative");
  Rng rng(seed);
  const auto segs = LineSegments();
  std::vector<Vec> noisy, clean, ends;
  std::vector<UnitNormal> normals;
  std::vector<std::int32_t> labels;
  for (std::size_t s = 0; s < segs.size(); ++s) {
    const Vec& dir = segs[s].dir;
    const UnitNormal n = Canonicalize(Vec(-dir[1], dir[0]));
    ends.push_back(segs[s].a);
    ends.push_back(segs[s].b);
    for (int i = 0; i < points_per_line; ++i) {
      const Vec p = segs[s].a + rng.Uniform() * dir;
      clean.push_back(p);
      noisy.push_back(p + Vec(sigma * rng.Normal(), sigma * rng.Normal()));
      normals.push_back(n);
      labels.push_back(static_cast<std::int32_t>(s));
    }
  }
  const auto count = static_cast<std::size_t>(
      std::llround(rho / (1.0 - rho) * static_cast<double>(clean.size())));
  const auto [blo, bhi] = BoundsOf(ends, 2);
  const auto [lo, hi] = GrownBox(blo, bhi, 2);
  std::vector<Vec> outliers;
  for (std::size_t i = 0; i < count; ++i) outliers.push_back(UniformInBox(rng, lo, hi, 2));
  return Assemble(2, std::move(noisy), std::move(clean), std::move(normals),
                  std::move(labels), outliers,
                  SceneParams{"lines2d", seed, sigma, rho, 0});
}

Polyhedron ParsePolyhedron(const std::string& name) {
  if (name == "dodecahedron") return Polyhedron::kDodecahedron;
  if (name == "cube") return Polyhedron::kCube;
  if (name == "box") return Polyhedron::kBox;
  throw Error("unknown polyhedron '" + name + "'");
}

TriangleMesh MakePolyhedron(Polyhedron shape) {
  TriangleMesh mesh;
  if (shape == Polyhedron::kCube || shape == Polyhedron::kBox) {
    const Vec half = shape == Polyhedron::kCube ? Vec(1, 1, 1) : Vec(1.5, 1.0, 0.6);
    for (int i = 0; i < 8; ++i) {
      mesh.vertices.push_back(Vec((i & 1 ? 1 : -1) * half[0],
                                  (i & 2 ? 1 : -1) * half[1],
                                  (i & 4 ? 1 : -1) * half[2]));
    }
    // Quads as corner-index lists, outward winding is irrelevant here.
    const std::array<std::array<std::uint32_t, 4>, 6> quads = {{
        {0, 2, 6, 4}, {1, 3, 7, 5},  // x = -1, +1
        {0, 1, 5, 4}, {2, 3, 7, 6},  // y
        {0, 1, 3, 2}, {4, 5, 7, 6},  // z
    }};
    for (const auto& q : quads) {
      mesh.triangles.push_back({q[0], q[1], q[2]});
      mesh.triangles.push_back({q[0], q[2], q[3]});
    }
    return mesh;
  }

  const double phi = std::numbers::phi;
  for (int i = 0; i < 8; ++i) {
    mesh.vertices.push_back(Vec(i & 1 ? 1 : -1, i & 2 ? 1 : -1, i & 4 ? 1 : -1));
  }
  for (double a : {-1.0, 1.0}) {
    for (double b : {-1.0, 1.0}) {
      mesh.vertices.push_back(Vec(0, a / phi, b * phi));
      mesh.vertices.push_back(Vec(a / phi, b * phi, 0));
      mesh.vertices.push_back(Vec(a * phi, 0, b / phi));
    }
  }
  // Face normals point at the vertices of the dual icosahedron.
  std::vector<Vec> face_normals;
  for (double a : {-1.0, 1.0}) {
    for (double b : {-1.0, 1.0}) {
      face_normals.push_back(Vec(0, a * phi, b));
      face_normals.push_back(Vec(a * phi, b, 0));
      face_normals.push_back(Vec(b, 0, a * phi));
    }
  }
  for (const Vec& fn : face_normals) {
    double top = -1e300;
    for (const Vec& v : mesh.vertices) top = std::max(top, fn.Dot(v));
    std::vector<std::uint32_t> face;
    for (std::uint32_t i = 0; i < mesh.vertices.size(); ++i) {
      if (fn.Dot(mesh.vertices[i]) > top - 1e-9) face.push_back(i);
    }
    if (face.size() != 5) throw Error("dodecahedron construction failed");
    Vec c = Vec::Zero(3);
    for (std::uint32_t i : face) c += mesh.vertices[i];
    c *= 0.2;
    const Vec n = fn * (1.0 / fn.Norm());
    Vec u = mesh.vertices[face[0]] - c;
    u *= 1.0 / u.Norm();
    const Vec w(n[1] * u[2] - n[2] * u[1], n[2] * u[0] - n[0] * u[2],
                n[0] * u[1] - n[1] * u[0]);
    std::sort(face.begin(), face.end(), [&](std::uint32_t x, std::uint32_t y) {
      const Vec dx = mesh.vertices[x] - c, dy = mesh.vertices[y] - c;
      return std::atan2(dx.Dot(w), dx.Dot(u)) < std::atan2(dy.Dot(w), dy.Dot(u));
    });
    for (int k = 1; k < 4; ++k) mesh.triangles.push_back({face[0], face[k], face[k + 1]});
  }
  return mesh;
}

SyntheticScene SampleMesh(const TriangleMesh& mesh, std::size_t n,
                          double noise_factor, std::uint64_t seed) {
  if (n < 1) throw Error("sample count must be positive");
  if (mesh.triangles.empty()) throw Error("mesh has no triangles");
  if (!(noise_factor >= 0.0)) throw Error("noise factor must be non-negative");

  // Group coplanar triangles into labeled faces.
  std::vector<UnitNormal> tri_normal;
  std::vector<std::int32_t> tri_label;
  std::vector<std::pair<UnitNormal, double>> planes;
  std::vector<double> cumulative;
  double total_area = 0.0;
  for (std::size_t t = 0; t < mesh.triangles.size(); ++t) {
    const Vec raw = TriangleNormalRaw(mesh, t);
    const double area = 0.5 * raw.Norm();
    if (!(area > 0.0)) throw Error("mesh has a degenerate triangle");
    const UnitNormal un = Canonicalize(raw);
    const double offset = un.vec().Dot(mesh.vertices[mesh.triangles[t][0]]);
    std::int32_t label = -1;
    for (std::size_t f = 0; f < planes.size(); ++f) {
      if (AxialSquaredDistance(planes[f].first, un) < 1e-18 &&
          std::abs(planes[f].second - offset) < 1e-9) {
        label = static_cast<std::int32_t>(f);
        break;
      }
    }
    if (label < 0) {
      label = static_cast<std::int32_t>(planes.size());
      planes.emplace_back(un, offset);
    }
    tri_normal.push_back(un);
    tri_label.push_back(label);
    total_area += area;
    cumulative.push_back(total_area);
  }

  Rng rng(seed);
  std::vector<Vec> clean;
  std::vector<UnitNormal> normals;
  std::vector<std::int32_t> labels;
  clean.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double pick = rng.Uniform() * total_area;
    std::size_t t = static_cast<std::size_t>(
        std::upper_bound(cumulative.begin(), cumulative.end(), pick) -
        cumulative.begin());
    t = std::min(t, cumulative.size() - 1);
    const auto& tri = mesh.triangles[t];
    const double r1 = std::sqrt(rng.Uniform());
    const double r2 = rng.Uniform();
    clean.push_back((1.0 - r1) * mesh.vertices[tri[0]] +
                    (r1 * (1.0 - r2)) * mesh.vertices[tri[1]] +
                    (r1 * r2) * mesh.vertices[tri[2]]);
    normals.push_back(planes[tri_label[t]].first);
    labels.push_back(tri_label[t]);
  }
  const auto [lo, hi] = BoundsOf(clean, 3);
  const double sigma = noise_factor * Distance(lo, hi);
  std::vector<Vec> noisy;
  noisy.reserve(n);
  for (const Vec& p : clean) {
    noisy.push_back(p + Vec(sigma * rng.Normal(), sigma * rng.Normal(),
                            sigma * rng.Normal()));
  }
  return Assemble(3, std::move(noisy), std::move(clean), std::move(normals),
                  std::move(labels), {}, SceneParams{"mesh", seed, sigma, 0.0, 0});
}

SyntheticScene SamplePolyhedron(Polyhedron shape, std::size_t n,
                                double noise_factor, std::uint64_t seed) {
  SyntheticScene s = SampleMesh(MakePolyhedron(shape), n, noise_factor, seed);
  s.params.generator = shape == Polyhedron::kDodecahedron ? "dodecahedron"
                       : shape == Polyhedron::kCube       ? "cube"
                                                          : "box";
  return s;
}

SyntheticScene Corrupt(const SyntheticScene& scene, std::size_t extra_outliers,
                       std::uint64_t seed) {
  if (extra_outliers == 0) return scene;
  const int dim = scene.cloud.dim();
  const auto [blo, bhi] = scene.cloud.Bounds();
  const auto [lo, hi] = GrownBox(blo, bhi, dim);
  Rng rng(seed);
  std::vector<Vec> pts = scene.cloud.points();
  std::vector<Vec> clean = scene.truth.cloud.points();
  std::vector<UnitNormal> normals = scene.truth.cloud.normals();
  std::vector<std::int32_t> labels =
      scene.truth.labels.value_or(std::vector<std::int32_t>(pts.size(), -1));
  std::vector<char> mask = scene.truth.inlier_mask;
  for (std::size_t i = 0; i < extra_outliers; ++i) {
    const Vec o = UniformInBox(rng, lo, hi, dim);
    pts.push_back(o);
    clean.push_back(o);
    normals.push_back(UnitNormal::Up(dim));
    labels.push_back(-1);
    mask.push_back(0);
  }
  SyntheticScene out;
  out.cloud = PointCloud(dim, std::move(pts));
  out.truth.cloud = PointCloud(dim, std::move(clean), std::move(normals));
  out.truth.labels = std::move(labels);
  out.truth.inlier_mask = std::move(mask);
  out.params = scene.params;
  out.params.outliers += extra_outliers;
  out.params.outlier_fraction =
      static_cast<double>(out.params.outliers) / static_cast<double>(out.cloud.size());
  return out;
}

}  // namespace planefit
