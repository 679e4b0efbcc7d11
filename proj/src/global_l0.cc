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

#include "planefit/global_l0.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <string>

#include "planefit/normals.h"

namespace planefit {
namespace {

using Clock = std::chrono::steady_clock;

double MillisSince(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

void Require(bool ok, const std::string& what) {
  if (!ok) throw Error("invalid config: " + what);
}

}  // namespace

void GlobalL0Config::Validate() const {
  Require(k >= 1, "k must be >= 1");
  Require(tau >= 1, "tau must be >= 1");
  Require(lambda_l > 0.0, "lambda_l must be > 0");
  Require(lambda_g >= 0.0, "lambda_g must be >= 0");
  Require(lambda_floor > 0.0, "lambda_floor must be > 0");
  Require(normal_k >= 0, "normal_k must be >= 0");
}

double InitialLambda(const PointCloud& cloud, const NeighborGraph& graph,
                     double floor) {
  if (!cloud.has_normals()) throw Error("InitialLambda needs point normals");
  std::vector<double> nearest;
  nearest.reserve(cloud.size());
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    const auto nbrs = graph.neighbors(i);
    if (nbrs.empty()) continue;
    double best = std::numeric_limits<double>::infinity();
    for (PointIndex j : nbrs) {
      best = std::min(best, AxialSquaredDistance(cloud.normal(i), cloud.normal(j)));
    }
    nearest.push_back(std::sqrt(best));
  }
  if (nearest.empty()) return floor;
  const std::size_t mid = (nearest.size() - 1) / 2;
  std::nth_element(nearest.begin(), nearest.begin() + mid, nearest.end());
  return std::max(nearest[mid], floor);
}

ReconstructionResult ReconstructNormals(const PointCloud& cloud,
                                        const GlobalL0Config& config,
                                        FusionAudit* audit) {
  config.Validate();
  if (cloud.empty()) throw Error("cannot reconstruct an empty cloud");
  const auto t0 = Clock::now();

  auto t = Clock::now();
  NeighborGraph graph = BuildKnnGraph(cloud, config.k);
  const double graph_ms = MillisSince(t);

  t = Clock::now();
  PointCloud with_normals = cloud;
  std::size_t degenerate = 0;
  if (!cloud.has_normals() || config.estimate_normals) {
    NormalEstimate est = config.normal_k > 0
                             ? EstimateNormalsPca(cloud, config.normal_k)
                             : EstimateNormalsPca(cloud, graph);
    with_normals = std::move(est.cloud);
    degenerate = est.degenerate_count;
  }
  const double normals_ms = MillisSince(t);

  ReconstructionResult result =
      ReconstructNormals(with_normals, graph, config, audit);
  result.degenerate_normals = degenerate;
  result.timings.graph_ms = graph_ms;
  result.timings.normals_ms = normals_ms;
  result.timings.total_ms = MillisSince(t0);
  return result;
}

ReconstructionResult ReconstructNormals(const PointCloud& cloud,
                                        const NeighborGraph& graph,
                                        const GlobalL0Config& config,
                                        FusionAudit* audit) {
  config.Validate();
  if (cloud.empty()) throw Error("cannot reconstruct an empty cloud");
  if (!cloud.has_normals()) throw Error("ReconstructNormals needs normals");
  const auto t0 = Clock::now();

  ReconstructionResult result;
  result.cloud = cloud;
  result.graph = graph;

  // The audit measures energies against the normals actually being fused.
  FusionAudit* const user_audit = audit;
  FusionAudit local_audit;
  if (audit != nullptr) {
    local_audit = *audit;
    local_audit.cloud = &cloud;
    audit = &local_audit;
  }

  double lambda = InitialLambda(cloud, graph, config.lambda_floor);
  RegionPartition partition = InitPartition(cloud, graph);
  std::vector<UnitNormal> selected;
  bool last_selected = false;
  bool ever_selected = false;
  do {
    IterationTrace it;
    it.lambda = lambda;

    auto t = Clock::now();
    partition = FusePass(std::move(partition), lambda, audit);
    result.timings.fusion_ms += MillisSince(t);
    it.regions = partition.region_count();

    t = Clock::now();
    const CandidateSet set = ExtractCandidates(partition, config.tau);
    it.candidates = set.candidates.size();
    const bool final_round = 2.0 * lambda > config.lambda_l;
    last_selected = !set.candidates.empty();
    if (last_selected) {
      SelectionResult sel = DoubleGreedy(set, lambda * config.lambda_g);
      if (final_round || !config.defer_small_regions) {
        partition = AssignRegions(std::move(partition), sel);
      } else {
        for (const Candidate& c : set.candidates) {
          const UnitNormal& n = sel.selected[NearestSelected(c.normal, sel.selected)];
          for (RegionId id : c.regions) partition.SetNormal(id, n);
        }
      }
      selected = std::move(sel.selected);
      it.selected = selected.size();
      ever_selected = true;
    }
    result.timings.selection_ms += MillisSince(t);

    result.trace.push_back(it);
    ++result.iterations;
    lambda *= 2.0;
  } while (lambda <= config.lambda_l);

  if (audit == &local_audit) {
    user_audit->merges = local_audit.merges;
    user_audit->violations = local_audit.violations;
    user_audit->max_increase = local_audit.max_increase;
  }

  if (!ever_selected) {
    throw Error("no region group ever reached tau = " +
                std::to_string(config.tau) + " points over " +
                std::to_string(result.iterations) +
                " rounds; lower tau or raise lambda_l");
  }
  if (!last_selected) {
    // The last round had nothing to select from: V is whatever the final
    // fusion pass left.
    selected.clear();
    for (const Candidate& c : ExtractCandidates(partition, 1).candidates) {
      selected.push_back(c.normal);
    }
  }

  // Map every region onto its index in V.
  std::vector<std::uint32_t> region_index(partition.point_count(), 0);
  for (RegionId id : partition.live_regions()) {
    const UnitNormal& n = partition.region(id).normal;
    auto it = std::find(selected.begin(), selected.end(), n);
    if (it == selected.end()) throw Error("region normal missing from V");
    region_index[id] = static_cast<std::uint32_t>(it - selected.begin());
  }
  result.per_point_normal_index.resize(partition.point_count());
  for (PointIndex p = 0; p < partition.point_count(); ++p) {
    result.per_point_normal_index[p] = region_index[partition.region_of(p)];
  }
  result.selected_normals = std::move(selected);
  result.final_partition = std::move(partition);
  result.timings.total_ms = MillisSince(t0);
  return result;
}

std::size_t CountDistinctNormals(const ReconstructionResult& result) {
  return result.selected_normals.size();
}

}  // namespace planefit
