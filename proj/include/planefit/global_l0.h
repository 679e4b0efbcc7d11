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

#ifndef PLANEFIT_GLOBAL_L0_H_
#define PLANEFIT_GLOBAL_L0_H_

#include <cstdint>
#include <vector>

#include "planefit/knn_graph.h"
#include "planefit/point_cloud.h"
#include "planefit/region_fusion.h"
#include "planefit/subset_selection.h"

namespace planefit {

struct GlobalL0Config {
  int k = 10;                  // neighbors per point in the fusion graph
  std::int64_t tau = 100;      // minimum support of a plane
  double lambda_l = 10.0;      // terminal local regularization
  double lambda_g = 1000.0;    // global regularization multiplier
  double lambda_floor = 1e-4;  // lower clamp for the starting lambda
  // Neighbors used for PCA normals; 0 reuses the fusion graph.
  int normal_k = 0;
  // Re-estimate normals even when the input already carries them.
  bool estimate_normals = false;
  // When set, regions below tau keep their own normal until the final round
  // and only the retained groups are pulled onto V in earlier rounds. When
  // cleared, every region is reassigned in every round.
  bool defer_small_regions = true;

  // Throws Error on an out-of-range field.
  void Validate() const;
};

struct PhaseTimings {
  double normals_ms = 0.0;
  double graph_ms = 0.0;
  double fusion_ms = 0.0;
  double selection_ms = 0.0;
  double total_ms = 0.0;
};

struct IterationTrace {
  double lambda = 0.0;
  std::size_t regions = 0;     // after the fusion pass
  std::size_t candidates = 0;  // groups reaching tau
  std::size_t selected = 0;    // |V| after selection (0 if it was skipped)
};

struct ReconstructionResult {
  PointCloud cloud;    // input points with the normals the solver used
  NeighborGraph graph;
  RegionPartition final_partition;
  std::vector<UnitNormal> selected_normals;                // V
  std::vector<std::uint32_t> per_point_normal_index;  // into V
  int iterations = 0;
  std::size_t degenerate_normals = 0;
  PhaseTimings timings;
  std::vector<IterationTrace> trace;
};

// Median over points of min_{j in N(i)} |I_i - I_j| (axial), with the lower
// middle element for even counts, clamped below by `floor`. Points without
// neighbors are skipped.
double InitialLambda(const PointCloud& cloud, const NeighborGraph& graph,
                     double floor);

// Alternates FusePass at lambda and DoubleGreedy at lambda * lambda_g,
// doubling lambda after each round until it exceeds lambda_l; at least one
// round always runs. The final round reassigns every region, so |V| equals
// the number of distinct region normals. A round in which no region group reaches tau skips the
// selection step. Throws Error on an empty cloud or when no round could
// select.
ReconstructionResult ReconstructNormals(const PointCloud& cloud,
                                        const GlobalL0Config& config,
                                        FusionAudit* audit = nullptr);

// Same, on a prebuilt graph over a cloud that already has normals. An audit
// always measures against the normals being fused; its `cloud` is ignored.
ReconstructionResult ReconstructNormals(const PointCloud& cloud,
                                        const NeighborGraph& graph,
                                        const GlobalL0Config& config,
                                        FusionAudit* audit = nullptr);

// |V|: the number of distinct reconstructed normals.
std::size_t CountDistinctNormals(const ReconstructionResult& result);

}  // namespace planefit

#endif  // PLANEFIT_GLOBAL_L0_H_
