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

#ifndef PLANEFIT_SYNTHETIC_H_
#define PLANEFIT_SYNTHETIC_H_

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "planefit/metrics.h"
#include "planefit/point_cloud.h"

namespace planefit {

struct SceneParams {
  std::string generator;
  std::uint64_t seed = 0;
  double sigma = 0.0;             // absolute per-coordinate noise
  double outlier_fraction = 0.0;  // of the emitted total
  std::size_t outliers = 0;
};

// A generated cloud with its ground truth. Inliers come first, in generation
// order; truth.cloud holds their noise-free positions.
struct SyntheticScene {
  PointCloud cloud;
  GroundTruth truth;
  SceneParams params;
};

// Eight segments: the sides of the unit square plus four parallel segments
// at 45 degrees to it, three distinct directions overall. Points are uniform
// along each segment, perturbed by isotropic Gaussian noise `sigma`, then
// round(rho / (1 - rho) * inliers) uniform outliers are added over the
// bounding box grown by 5% per side. Throws Error unless 0 <= rho < 1.
SyntheticScene GenerateLines2d(int points_per_line, double sigma, double rho,
                               std::uint64_t seed);

// Bounding-box diagonal of the noise-free eight-segment scene.
double Lines2dExtent();

struct TriangleMesh {
  std::vector<Vec> vertices;
  std::vector<std::array<std::uint32_t, 3>> triangles;
};

enum class Polyhedron { kDodecahedron, kCube, kBox };

Polyhedron ParsePolyhedron(const std::string& name);
// Regular dodecahedron with vertices (+-1, +-1, +-1), the cube [-1, 1]^3, or
// the 3 x 2 x 1.2 box centered at the origin, triangulated.
TriangleMesh MakePolyhedron(Polyhedron shape);

// n area-uniform samples of the mesh surface with per-coordinate Gaussian
// noise of sigma = noise_factor * l, l the bounding-box diagonal of the
// noise-free samples. Coplanar triangles share one label; truth normals are
// the canonical face normals.
SyntheticScene SampleMesh(const TriangleMesh& mesh, std::size_t n,
                          double noise_factor, std::uint64_t seed);

SyntheticScene SamplePolyhedron(Polyhedron shape, std::size_t n,
                                double noise_factor, std::uint64_t seed);

// Appends `extra_outliers` points uniform over the cloud's bounding box grown
// by 5% per side, labeled -1 and masked as non-inliers.
SyntheticScene Corrupt(const SyntheticScene& scene, std::size_t extra_outliers,
                       std::uint64_t seed);

}  // namespace planefit

#endif  // PLANEFIT_SYNTHETIC_H_
