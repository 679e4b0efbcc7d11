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

#ifndef PLANEFIT_METRICS_H_
#define PLANEFIT_METRICS_H_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "planefit/plane_extraction.h"
#include "planefit/point_cloud.h"

namespace planefit {

// Reference data indexed like the evaluated cloud: entry i describes input
// point i. `cloud` holds the noise-free position and true normal of every
// inlier; entries with inlier_mask[i] == false are ignored. The ground-truth
// set G is the inlier entries.
struct GroundTruth {
  PointCloud cloud;
  std::optional<std::vector<std::int32_t>> labels;  // segment ids, -1 outlier
  std::vector<char> inlier_mask;

  std::size_t inlier_count() const;
  // G as a stand-alone cloud (positions only).
  PointCloud InlierPoints() const;
  // Throws Error if sizes or normals are inconsistent.
  void Validate() const;
};

// RMS over G of the unoriented angle (degrees) between the reconstructed and
// the true normal. `reconstructed` is indexed like the truth.
double NormalRmsError(std::span<const UnitNormal> reconstructed,
                      const GroundTruth& truth);

// RMS over G of the distance to the nearest plane.
double PlaneRmsError(const GroundTruth& truth,
                     std::span<const Hyperplane> planes);

// sqrt(sum over labeled input points of the squared distance from the
// point's projection onto its plane to the nearest point of G, divided by
// the total input count). Zero when no input point is labeled.
double ProjectionRmsError(const LabeledCloud& input,
                          std::span<const Hyperplane> planes,
                          const GroundTruth& truth);

struct ConsistencyErrors {
  double gce = 0.0;
  double lce = 0.0;
};

// Global and local consistency errors between two labelings of the same
// points. Labels are arbitrary integers; each distinct value is a segment.
ConsistencyErrors SegmentConsistency(std::span<const std::int32_t> a,
                                     std::span<const std::int32_t> b);

// Single-threaded references. This ProjectionRmsError scans every truth
// point per query instead of using a k-d tree.
namespace serial {
double PlaneRmsError(const GroundTruth& truth,
                     std::span<const Hyperplane> planes);
double ProjectionRmsError(const LabeledCloud& input,
                          std::span<const Hyperplane> planes,
                          const GroundTruth& truth);
}  // namespace serial

}  // namespace planefit

#endif  // PLANEFIT_METRICS_H_
