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

#ifndef PLANEFIT_TESTS_TEST_UTIL_H_
#define PLANEFIT_TESTS_TEST_UTIL_H_

#include <cmath>
#include <filesystem>
#include <string>
#include <vector>

#include <unistd.h>

#include "planefit/point_cloud.h"
#include "planefit/random.h"
#include "planefit/vec.h"

namespace planefit::testing {

inline Vec RandomVec(Rng& rng, int dim, double lo = -1.0, double hi = 1.0) {
  return dim == 2 ? Vec(rng.Uniform(lo, hi), rng.Uniform(lo, hi))
                  : Vec(rng.Uniform(lo, hi), rng.Uniform(lo, hi), rng.Uniform(lo, hi));
}

inline UnitNormal RandomNormal(Rng& rng, int dim) {
  for (;;) {
    const Vec v = dim == 2 ? Vec(rng.Normal(), rng.Normal())
                           : Vec(rng.Normal(), rng.Normal(), rng.Normal());
    if (v.Norm() > 1e-6) return Canonicalize(v);
  }
}

inline PointCloud RandomCloud(Rng& rng, int dim, std::size_t n, bool normals) {
  std::vector<Vec> pts;
  std::vector<UnitNormal> ns;
  for (std::size_t i = 0; i < n; ++i) {
    pts.push_back(RandomVec(rng, dim));
    if (normals) ns.push_back(RandomNormal(rng, dim));
  }
  return normals ? PointCloud(dim, std::move(pts), std::move(ns)) : PointCloud(dim, std::move(pts));
}

// Rotation about a unit axis by `angle` radians (Rodrigues).
inline Vec Rotate(const Vec& v, const Vec& axis, double angle) {
  const double c = std::cos(angle), s = std::sin(angle);
  const Vec cross(axis[1] * v[2] - axis[2] * v[1], axis[2] * v[0] - axis[0] * v[2],
                  axis[0] * v[1] - axis[1] * v[0]);
  return v * c + cross * s + axis * (axis.Dot(v) * (1.0 - c));
}

// A fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static int counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("planefit_" + tag + "_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

}  // namespace planefit::testing

#endif  // PLANEFIT_TESTS_TEST_UTIL_H_
