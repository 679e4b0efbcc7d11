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

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>
#include <unordered_map>

#include "planefit/kdtree.h"
#include "planefit/parallel.h"

namespace planefit {

std::size_t GroundTruth::inlier_count() const {
  return static_cast<std::size_t>(
      std::count(inlier_mask.begin(), inlier_mask.end(), 1));
}

PointCloud GroundTruth::InlierPoints() const {
  PointCloud g(cloud.dim());
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    if (inlier_mask[i]) g.AddPoint(cloud.point(i));
  }
  return g;
}

void GroundTruth::Validate() const {
  if (inlier_mask.size() != cloud.size()) {
    throw Error("ground truth inlier mask does not match its cloud");
  }
  if (labels && labels->size() != cloud.size()) {
    throw Error("ground truth labels do not match its cloud");
  }
  if (!cloud.has_normals()) throw Error("ground truth needs normals");
}

double NormalRmsError(std::span<const UnitNormal> reconstructed,
                      const GroundTruth& truth) {
  truth.Validate();
  if (reconstructed.size() != truth.cloud.size()) {
    throw Error("reconstructed normals do not correspond to the truth");
  }
  double sum = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < reconstructed.size(); ++i) {
    if (!truth.inlier_mask[i]) continue;
    const double a = AxialAngleDegrees(reconstructed[i], truth.cloud.normal(i));
    sum += a * a;
    ++count;
  }
  if (count == 0) throw Error("ground truth has no inliers");
  return std::sqrt(sum / static_cast<double>(count));
}

namespace {

double NearestPlaneDistance(const Vec& p, std::span<const Hyperplane> planes) {
  double best = std::numeric_limits<double>::infinity();
  for (const Hyperplane& h : planes) best = std::min(best, PointPlaneDistance(p, h));
  return best;
}

std::vector<const Hyperplane*> PlaneLookup(std::span<const Hyperplane> planes) {
  std::int32_t max_id = -1;
  for (const Hyperplane& h : planes) max_id = std::max(max_id, h.id);
  std::vector<const Hyperplane*> lookup(static_cast<std::size_t>(max_id + 1),
                                        nullptr);
  for (const Hyperplane& h : planes) {
    if (h.id < 0) throw Error("plane ids must be non-negative");
    lookup[h.id] = &h;
  }
  return lookup;
}

const Hyperplane& PlaneFor(const std::vector<const Hyperplane*>& lookup,
                           std::int32_t label) {
  if (label < 0 || static_cast<std::size_t>(label) >= lookup.size() ||
      lookup[label] == nullptr) {
    throw Error("label " + std::to_string(label) + " names no plane");
  }
  return *lookup[label];
}

void CheckPlaneInputs(const GroundTruth& truth,
                      std::span<const Hyperplane> planes) {
  truth.Validate();
  if (planes.empty()) throw Error("plane error needs at least one plane");
  if (truth.inlier_count() == 0) throw Error("ground truth has no inliers");
}

void CheckProjectionInputs(const LabeledCloud& input, const GroundTruth& truth) {
  truth.Validate();
  if (input.labels.size() != input.cloud.size()) {
    throw Error("labels do not match the input cloud");
  }
  if (truth.inlier_count() == 0) throw Error("ground truth has no inliers");
}

}  // namespace

double PlaneRmsError(const GroundTruth& truth,
                     std::span<const Hyperplane> planes) {
  CheckPlaneInputs(truth, planes);
  const auto n = static_cast<std::ptrdiff_t>(truth.cloud.size());
  double sum = 0.0;
#pragma omp parallel for num_threads(MaxThreads()) reduction(+ : sum) schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    if (!truth.inlier_mask[i]) continue;
    const double d = NearestPlaneDistance(truth.cloud.point(i), planes);
    sum += d * d;
  }
  return std::sqrt(sum / static_cast<double>(truth.inlier_count()));
}

double ProjectionRmsError(const LabeledCloud& input,
                          std::span<const Hyperplane> planes,
                          const GroundTruth& truth) {
  CheckProjectionInputs(input, truth);
  if (input.cloud.empty()) return 0.0;
  const PointCloud g = truth.InlierPoints();
  const KdTree tree(g.points(), g.dim());
  const auto lookup = PlaneLookup(planes);
  // Label errors are raised here because exceptions cannot leave the
  // parallel region.
  for (std::int32_t label : input.labels) {
    if (label != kOutlier) PlaneFor(lookup, label);
  }
  const auto n = static_cast<std::ptrdiff_t>(input.cloud.size());
  double sum = 0.0;
#pragma omp parallel num_threads(MaxThreads()) reduction(+ : sum)
  {
    std::vector<Neighbor> scratch;
#pragma omp for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      if (input.labels[i] == kOutlier) continue;
      const Vec q = ProjectPoint(input.cloud.point(i), PlaneFor(lookup, input.labels[i]));
      tree.Nearest(q, 1, KdTree::kNoSkip, scratch);
      sum += scratch.front().squared_distance;
    }
  }
  return std::sqrt(sum / static_cast<double>(input.cloud.size()));
}

namespace serial {

double PlaneRmsError(const GroundTruth& truth,
                     std::span<const Hyperplane> planes) {
  CheckPlaneInputs(truth, planes);
  double sum = 0.0;
  for (std::size_t i = 0; i < truth.cloud.size(); ++i) {
    if (!truth.inlier_mask[i]) continue;
    const double d = NearestPlaneDistance(truth.cloud.point(i), planes);
    sum += d * d;
  }
  return std::sqrt(sum / static_cast<double>(truth.inlier_count()));
}

// Exhaustive nearest-point scan; no spatial index.
double ProjectionRmsError(const LabeledCloud& input,
                          std::span<const Hyperplane> planes,
                          const GroundTruth& truth) {
  CheckProjectionInputs(input, truth);
  if (input.cloud.empty()) return 0.0;
  const auto lookup = PlaneLookup(planes);
  double sum = 0.0;
  for (std::size_t i = 0; i < input.cloud.size(); ++i) {
    if (input.labels[i] == kOutlier) continue;
    const Vec q = ProjectPoint(input.cloud.point(i), PlaneFor(lookup, input.labels[i]));
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < truth.cloud.size(); ++j) {
      if (truth.inlier_mask[j]) best = std::min(best, SquaredDistance(q, truth.cloud.point(j)));
    }
    sum += best;
  }
  return std::sqrt(sum / static_cast<double>(input.cloud.size()));
}

}  // namespace serial

ConsistencyErrors SegmentConsistency(std::span<const std::int32_t> a,
                                     std::span<const std::int32_t> b) {
  if (a.size() != b.size()) {
    throw Error("segmentations have different lengths: " +
                std::to_string(a.size()) + " vs " + std::to_string(b.size()));
  }
  if (a.empty()) throw Error("segmentations are empty");
  std::unordered_map<std::int32_t, double> size_a, size_b;
  std::map<std::pair<std::int32_t, std::int32_t>, double> joint;
  for (std::size_t i = 0; i < a.size(); ++i) {
    size_a[a[i]] += 1.0;
    size_b[b[i]] += 1.0;
    joint[{a[i], b[i]}] += 1.0;
  }
  // Every point in cell (s, t) has the same refinement errors.
  double sum_ab = 0.0, sum_ba = 0.0, sum_min = 0.0;
  for (const auto& [key, count] : joint) {
    const double ra = size_a[key.first];
    const double rb = size_b[key.second];
    const double e_ab = (ra - count) / ra;
    const double e_ba = (rb - count) / rb;
    sum_ab += count * e_ab;
    sum_ba += count * e_ba;
    sum_min += count * std::min(e_ab, e_ba);
  }
  const double n = static_cast<double>(a.size());
  return {std::min(sum_ab, sum_ba) / n, sum_min / n};
}

}  // namespace planefit
