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

#ifndef PLANEFIT_REGION_FUSION_H_
#define PLANEFIT_REGION_FUSION_H_

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "planefit/knn_graph.h"
#include "planefit/point_cloud.h"
#include "planefit/vec.h"

namespace planefit {

using RegionId = std::uint32_t;

struct Region {
  RegionId id = 0;
  std::vector<PointIndex> point_ids;  // unordered
  std::int64_t weight = 0;            // == point_ids.size()
  UnitNormal normal = UnitNormal::Up(3);
};

// Adjacent region and the number of graph edges crossing into it.
struct RegionLink {
  RegionId region;
  std::uint32_t multiplicity;
};

// Disjoint constant-normal regions covering every point of a cloud, plus the
// region adjacency weighted by crossing edge counts. Region ids are stable:
// the singleton partition uses the point index as region id, and a merge
// keeps the smaller id.
class RegionPartition {
 public:
  RegionPartition() = default;

  int dim() const { return dim_; }
  std::size_t point_count() const { return point_region_.size(); }
  std::size_t region_count() const { return live_count_; }

  // Live region ids in ascending order.
  std::vector<RegionId> live_regions() const;
  bool is_live(RegionId id) const { return id < live_.size() && live_[id]; }
  const Region& region(RegionId id) const { return regions_[id]; }

  RegionId region_of(PointIndex p) const;
  const UnitNormal& normal_of(PointIndex p) const {
    return regions_[region_of(p)].normal;
  }

  // Neighbors of a live region, ascending by id. Built on demand in
  // O(L log L) for L stored link entries.
  std::vector<RegionLink> links(RegionId id) const;
  // Crossing-edge count between two live regions; 0 when not adjacent.
  std::uint32_t multiplicity(RegionId a, RegionId b) const;
  // Sum of multiplicities over unordered adjacent pairs.
  std::uint64_t boundary_edge_count() const { return boundary_edges_; }

  void SetNormal(RegionId id, const UnitNormal& normal);
  // Fuses two live regions into the one with the smaller id, which takes
  // `normal`. The smaller point and link lists are appended to the larger,
  // so the cost does not grow with the larger region. Returns the surviving
  // id.
  RegionId Merge(RegionId a, RegionId b, const UnitNormal& normal);
  // Fuses the distinct live regions `ids` into the one with the smallest id,
  // which takes `normal`. Returns the surviving id.
  RegionId MergeGroup(std::span<const RegionId> ids, const UnitNormal& normal);
  // Flattens the point-to-region map and rewrites every link list in
  // canonical form; called at the end of every pass.
  void Compact();

  // Throws Error describing the first broken structural invariant.
  void Validate() const;

 private:
  friend RegionPartition InitPartition(const PointCloud& cloud,
                                       const NeighborGraph& graph);

  friend class FusionSweep;

  RegionId Find(RegionId id) const;
  // Find() with path halving.
  RegionId Root(RegionId id);
  // Sum of the entries of `from` whose target resolves to `to`.
  std::uint32_t CrossingCount(RegionId from, RegionId to);

  int dim_ = 3;
  std::vector<Region> regions_;
  std::vector<char> live_;
  std::vector<RegionId> parent_;        // union-find over region ids
  std::vector<RegionId> point_region_;  // some ancestor of the point's region
  // Per live region, link entries whose targets may name merged regions and
  // resolve through Find(). Several entries can resolve to one neighbor and
  // entries resolving to the region itself are ignored.
  std::vector<std::vector<RegionLink>> links_;
  std::size_t live_count_ = 0;
  std::uint64_t boundary_edges_ = 0;
};

// One region per point carrying the point's normal; one unit of multiplicity
// per graph edge. Throws Error if the cloud has no normals.
RegionPartition InitPartition(const PointCloud& cloud,
                              const NeighborGraph& graph);

// Optional instrumentation for FusePass: evaluates the change of
// PartitionEnergy caused by every merge, relative to the normals of `cloud`.
// Each evaluation costs O(size of the two regions).
struct FusionAudit {
  const PointCloud* cloud = nullptr;
  std::size_t merges = 0;
  std::size_t violations = 0;  // merges that raised the energy by > 1e-9
  double max_increase = -std::numeric_limits<double>::infinity();
};

// Fusion cost of joining regions with weights wa, wb and normals a, b:
// wa*wb/(wa+wb) * d(a,b)^2 with the axial distance.
double FusionCost(std::int64_t wa, const UnitNormal& a, std::int64_t wb,
                  const UnitNormal& b);

// Weight-weighted mean of two normals after aligning b to a's hemisphere.
UnitNormal MergedNormal(std::int64_t wa, const UnitNormal& a, std::int64_t wb,
                        const UnitNormal& b);

// One region-fusion sweep at fixed lambda.
//
// Adjacent regions that already carry identical normals are joined first
// (their fusion cost is zero for every lambda). Then live regions are visited
// in ascending id; the visited region tests its neighbors in ascending id and
// absorbs neighbor j whenever FusionCost <= lambda * c_ij. Absorbed
// neighbors contribute their own neighbors to the same visit, so merges
// cascade. The merged normal is MergedNormal(). After each merge, neighbors
// that carry exactly the merged normal are joined at zero cost as well.
RegionPartition FusePass(RegionPartition partition, double lambda,
                         FusionAudit* audit = nullptr);

// Value of the fusion objective for the partition:
//   sum_p d(V(p), I_p)^2 + lambda * #{ordered neighbor pairs (p, q) with
//   V(p) != V(q)}
// where I are the normals of `original` and d is the axial distance.
double PartitionEnergy(const RegionPartition& partition,
                       const PointCloud& original, double lambda);

}  // namespace planefit

#endif  // PLANEFIT_REGION_FUSION_H_
