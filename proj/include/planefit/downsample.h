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

#ifndef PLANEFIT_DOWNSAMPLE_H_
#define PLANEFIT_DOWNSAMPLE_H_

#include <vector>

#include "planefit/point_cloud.h"

namespace planefit {

struct Downsampled {
  PointCloud cloud;
  std::vector<PointIndex> kept;  // source index of each output point, ascending
};

// Uniform grid down-sampling: keeps the lowest-index point of every occupied
// cubic cell of side `cell`, anchored at the bounding-box minimum. Normals are
// carried over when present. Throws Error unless cell > 0.
Downsampled GridDownsample(const PointCloud& cloud, double cell);

}  // namespace planefit

#endif  // PLANEFIT_DOWNSAMPLE_H_
