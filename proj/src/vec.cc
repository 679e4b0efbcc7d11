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

#include <algorithm>
#include <limits>
#include <numbers>

namespace planefit {

UnitNormal UnitNormal::Up(int dim) { return UnitNormal(Vec::Axis(dim, dim - 1)); }

UnitNormal Canonicalize(const Vec& raw) {
  const double norm = raw.Norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw Error("cannot canonicalize a zero or non-finite direction");
  }
  // Already-unit input is left unscaled so canonicalization is idempotent
  // bit for bit.
  const bool unit = std::abs(norm - 1.0) <= 4.0 * std::numeric_limits<double>::epsilon();
  Vec v = unit ? raw : raw * (1.0 / norm);
  const int last = v.dim() - 1;
  bool flip = false;
  if (std::abs(v[last]) > kHorizonTolerance) {
    flip = v[last] < 0.0;
  } else {
    for (int i = 0; i < v.dim(); ++i) {
      if (v[i] != 0.0 && std::abs(v[i]) > kHorizonTolerance) {
        flip = v[i] < 0.0;
        break;
      }
    }
  }
  if (flip) v = -v;
  for (int i = 0; i < Vec::kMaxDim; ++i) v[i] += 0.0;  // no negative zeros
  return UnitNormal(v);
}

double AngleDegrees(const UnitNormal& a, const UnitNormal& b) {
  const double c = std::clamp(a.vec().Dot(b.vec()), -1.0, 1.0);
  return std::acos(c) * 180.0 / std::numbers::pi;
}

double AxialAngleDegrees(const UnitNormal& a, const UnitNormal& b) {
  const double c = std::clamp(std::abs(a.vec().Dot(b.vec())), 0.0, 1.0);
  return std::acos(c) * 180.0 / std::numbers::pi;
}

}  // namespace planefit
