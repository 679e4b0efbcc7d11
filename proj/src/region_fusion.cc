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

#include "planefit/region_fusion.h"

#include <algorithm>
#include <cassert>
#include <functional>
#include <queue>
#include <span>
#include <string>
#include <tuple>
#include <unordered_map>
#include <utility>

namespace planefit {
namespace {

// Sorts by target and sums duplicate targets.
void CombineLinks(std::vector<RegionLink>& links) {
  std::sort(links.begin(), links.end(),
            [](const RegionLink& x, const RegionLink& y) {
              return x.region < y.region;
            });
  std::size_t out = 0;
  for (const RegionLink& l : links) {
    if (out > 0 && links[out - 1].region == l.region) {
      links[out - 1].multiplicity += l.multiplicity;
    } else {
      links[out++] = l;
    }
  }
  links.resize(out);
}

}  // namespace

std::vector<RegionId> RegionPartition::live_regions() const {
  std::vector<RegionId> out;
  out.reserve(live_count_);
  for (RegionId id = 0; id < live_.size(); ++id) {
    if (live_[id]) out.push_back(id);
  }
  return out;
}

RegionId RegionPartition::Find(RegionId id) const {
  while (parent_[id] != id) id = parent_[id];
  return id;
}

RegionId RegionPartition::Root(RegionId id) {
  while (parent_[id] != id) {
    parent_[id] = parent_[parent_[id]];
    id = parent_[id];
  }
  return id;
}

RegionId RegionPartition::region_of(PointIndex p) const {
  return Find(point_region_[p]);
}

std::vector<RegionLink> RegionPartition::links(RegionId id) const {
  std::vector<RegionLink> out;
  if (!is_live(id)) return out;
  out.reserve(links_[id].size());
  for (const RegionLink& l : links_[id]) {
    const RegionId r = Find(l.region);
    if (r != id) out.push_back({r, l.multiplicity});
  }
  CombineLinks(out);
  return out;
}

std::uint32_t RegionPartition::multiplicity(RegionId a, RegionId b) const {
  if (a == b || !is_live(a) || !is_live(b)) return 0;
  std::uint32_t c = 0;
  for (const RegionLink& l : links_[a]) {
    if (Find(l.region) == b) c += l.multiplicity;
  }
  return c;
}

std::uint32_t RegionPartition::CrossingCount(RegionId from, RegionId to) {
  std::uint32_t c = 0;
  for (RegionLink& l : links_[from]) {
    l.region = Root(l.region);
    if (l.region == to) c += l.multiplicity;
  }
  return c;
}

void RegionPartition::SetNormal(RegionId id, const UnitNormal& normal) {
  if (!is_live(id)) throw Error("SetNormal on a dead region");
  if (normal.dim() != dim_) throw Error("normal dimension mismatch");
  regions_[id].normal = normal;
}

RegionId RegionPartition::Merge(RegionId a, RegionId b,
                                const UnitNormal& normal) {
  if (a == b || !is_live(a) || !is_live(b)) {
    throw Error("Merge needs two distinct live regions");
  }
  const RegionId keep = std::min(a, b);
  const RegionId gone = std::max(a, b);

  // Both lists count the crossing edges; the shorter is cheaper to scan.
  boundary_edges_ -= links_[keep].size() <= links_[gone].size()
                         ? CrossingCount(keep, gone)
                         : CrossingCount(gone, keep);

  auto& lk = links_[keep];
  auto& lg = links_[gone];
  if (lk.size() < lg.size()) std::swap(lk, lg);
  lk.insert(lk.end(), lg.begin(), lg.end());
  lg.clear();
  lg.shrink_to_fit();

  Region& k = regions_[keep];
  Region& g = regions_[gone];
  if (k.point_ids.size() < g.point_ids.size()) std::swap(k.point_ids, g.point_ids);
  k.point_ids.insert(k.point_ids.end(), g.point_ids.begin(), g.point_ids.end());
  g.point_ids.clear();
  g.point_ids.shrink_to_fit();
  k.weight += g.weight;
  g.weight = 0;
  k.normal = normal;

  live_[gone] = 0;
  parent_[gone] = keep;
  --live_count_;
  return keep;
}

RegionId RegionPartition::MergeGroup(std::span<const RegionId> ids,
                                     const UnitNormal& normal) {
  std::vector<RegionId> members(ids.begin(), ids.end());
  std::sort(members.begin(), members.end());
  if (members.empty() ||
      std::adjacent_find(members.begin(), members.end()) != members.end()) {
    throw Error("MergeGroup needs distinct live regions");
  }
  for (RegionId id : members) {
    if (!is_live(id)) throw Error("MergeGroup needs distinct live regions");
  }
  const RegionId keep = members.front();
  if (members.size() == 1) {
    SetNormal(keep, normal);
    return keep;
  }

  // Links between members are seen from both ends.
  std::uint64_t internal = 0;
  for (RegionId id : members) {
    for (RegionLink& l : links_[id]) {
      l.region = Root(l.region);
      if (l.region != id &&
          std::binary_search(members.begin(), members.end(), l.region)) {
        internal += l.multiplicity;
      }
    }
  }
  boundary_edges_ -= internal / 2;

  // The largest lists become the survivor's storage.
  RegionId most_links = keep, most_points = keep;
  for (RegionId id : members) {
    if (links_[id].size() > links_[most_links].size()) most_links = id;
    if (regions_[id].point_ids.size() > regions_[most_points].point_ids.size()) {
      most_points = id;
    }
  }
  std::vector<RegionLink> links = std::move(links_[most_links]);
  std::vector<PointIndex> points = std::move(regions_[most_points].point_ids);
  std::int64_t weight = 0;
  for (RegionId id : members) {
    Region& r = regions_[id];
    if (id != most_links) {
      links.insert(links.end(), links_[id].begin(), links_[id].end());
    }
    if (id != most_points) {
      points.insert(points.end(), r.point_ids.begin(), r.point_ids.end());
    }
    weight += r.weight;
    r.point_ids.clear();
    r.point_ids.shrink_to_fit();
    r.weight = 0;
    links_[id].clear();
    links_[id].shrink_to_fit();
    if (id != keep) {
      live_[id] = 0;
      parent_[id] = keep;
    }
  }
  Region& k = regions_[keep];
  k.point_ids = std::move(points);
  k.weight = weight;
  k.normal = normal;
  links_[keep] = std::move(links);
  live_count_ -= members.size() - 1;
  return keep;
}

void RegionPartition::Compact() {
  for (RegionId id = 0; id < parent_.size(); ++id) parent_[id] = Find(id);
  for (auto& r : point_region_) r = parent_[r];
  for (RegionId id = 0; id < links_.size(); ++id) {
    if (!live_[id]) continue;
    auto& links = links_[id];
    std::erase_if(links, [&](RegionLink& l) {
      l.region = parent_[l.region];
      return l.region == id;
    });
    CombineLinks(links);
  }
}

void RegionPartition::Validate() const {
  std::int64_t total = 0;
  std::size_t live = 0;
  std::vector<char> seen(point_region_.size(), 0);
  std::uint64_t twice_boundary = 0;
  // (smaller id, larger id, multiplicity) as seen from each end.
  std::vector<std::tuple<RegionId, RegionId, std::uint32_t>> from_low, from_high;
  for (RegionId id = 0; id < regions_.size(); ++id) {
    if (!live_[id]) continue;
    ++live;
    const Region& r = regions_[id];
    if (r.id != id) throw Error("region id mismatch");
    if (r.weight < 1 || r.weight != static_cast<std::int64_t>(r.point_ids.size())) {
      throw Error("region " + std::to_string(id) + " has inconsistent weight");
    }
    total += r.weight;
    for (PointIndex p : r.point_ids) {
      if (seen[p]) throw Error("point in two regions");
      seen[p] = 1;
      if (region_of(p) != id) throw Error("point_to_region out of sync");
    }
    for (const RegionLink& l : links(id)) {
      if (!is_live(l.region) || l.multiplicity < 1) {
        throw Error("bad adjacency entry");
      }
      if (id < l.region) {
        from_low.emplace_back(id, l.region, l.multiplicity);
      } else {
        from_high.emplace_back(l.region, id, l.multiplicity);
      }
      twice_boundary += l.multiplicity;
    }
  }
  if (live != live_count_) throw Error("live count out of sync");
  if (total != static_cast<std::int64_t>(point_region_.size())) {
    throw Error("region weights do not sum to the point count");
  }
  std::sort(from_low.begin(), from_low.end());
  std::sort(from_high.begin(), from_high.end());
  if (from_low != from_high) throw Error("adjacency not symmetric");
  if (twice_boundary != 2 * boundary_edges_) {
    throw Error("boundary edge count out of sync");
  }
}

RegionPartition InitPartition(const PointCloud& cloud,
                              const NeighborGraph& graph) {
  if (!cloud.has_normals()) throw Error("InitPartition needs point normals");
  if (graph.size() != cloud.size()) {
    throw Error("neighbor graph does not match the cloud");
  }
  const std::size_t n = cloud.size();
  RegionPartition part;
  part.dim_ = cloud.dim();
  part.regions_.resize(n);
  part.live_.assign(n, 1);
  part.parent_.resize(n);
  part.point_region_.resize(n);
  part.links_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto id = static_cast<RegionId>(i);
    Region& r = part.regions_[i];
    r.id = id;
    r.point_ids = {id};
    r.weight = 1;
    r.normal = cloud.normal(i);
    part.parent_[i] = id;
    part.point_region_[i] = id;
    const auto nbrs = graph.neighbors(i);
    part.links_[i].reserve(nbrs.size());
    for (PointIndex j : nbrs) part.links_[i].push_back({j, 1});
  }
  part.live_count_ = n;
  part.boundary_edges_ = graph.edge_count();
  return part;
}

double FusionCost(std::int64_t wa, const UnitNormal& a, std::int64_t wb,
                  const UnitNormal& b) {
  const double fa = static_cast<double>(wa);
  const double fb = static_cast<double>(wb);
  return fa * fb / (fa + fb) * AxialSquaredDistance(a, b);
}

UnitNormal MergedNormal(std::int64_t wa, const UnitNormal& a, std::int64_t wb,
                        const UnitNormal& b) {
  if (a == b) return a;
  const double sign = AlignmentSign(a.vec(), b.vec());
  return Canonicalize(static_cast<double>(wa) * a.vec() +
                      (sign * static_cast<double>(wb)) * b.vec());
}

double PartitionEnergy(const RegionPartition& partition,
                       const PointCloud& original, double lambda) {
  if (!original.has_normals() || original.size() != partition.point_count()) {
    throw Error("PartitionEnergy needs the original cloud with normals");
  }
  double data = 0.0;
  for (PointIndex p = 0; p < original.size(); ++p) {
    data += AxialSquaredDistance(partition.normal_of(p), original.normal(p));
  }
  // Every link is seen from both ends, which is exactly the ordered count.
  std::uint64_t cut = 0;
  for (RegionId id : partition.live_regions()) {
    const UnitNormal& mine = partition.region(id).normal;
    for (const RegionLink& l : partition.links(id)) {
      if (!(partition.region(l.region).normal == mine)) cut += l.multiplicity;
    }
  }
  return data + lambda * static_cast<double>(cut);
}

namespace {

// Change of PartitionEnergy caused by merging the sorted regions `members`
// into one region with the given normal, evaluated on the regions and links
// involved.
double MergeEnergyDelta(const RegionPartition& part,
                        std::span<const RegionId> members,
                        const UnitNormal& normal, const PointCloud& original,
                        double lambda) {
  auto is_member = [&](RegionId id) {
    return std::binary_search(members.begin(), members.end(), id);
  };
  double data = 0.0;
  for (RegionId r : members) {
    const UnitNormal& old = part.region(r).normal;
    for (PointIndex p : part.region(r).point_ids) {
      data += AxialSquaredDistance(normal, original.normal(p)) -
              AxialSquaredDistance(old, original.normal(p));
    }
  }
  // Each undirected edge contributes two ordered pairs. A link inside the
  // group is seen from both of its ends.
  double smooth = 0.0;
  for (RegionId r : members) {
    const UnitNormal& old = part.region(r).normal;
    for (const RegionLink& l : part.links(r)) {
      const UnitNormal& other = part.region(l.region).normal;
      const double c = 2.0 * static_cast<double>(l.multiplicity);
      if (is_member(l.region)) {
        smooth -= 0.5 * c * (old == other ? 0.0 : 1.0);
        continue;
      }
      smooth += c * ((normal == other ? 0.0 : 1.0) - (old == other ? 0.0 : 1.0));
    }
  }
  return data + lambda * smooth;
}

RegionId AuditedMerge(RegionPartition& part, std::span<const RegionId> members,
                      const UnitNormal& normal, double lambda,
                      FusionAudit* audit) {
  if (audit != nullptr && audit->cloud != nullptr) {
    std::vector<RegionId> sorted(members.begin(), members.end());
    std::sort(sorted.begin(), sorted.end());
    const double increase =
        MergeEnergyDelta(part, sorted, normal, *audit->cloud, lambda);
    audit->merges += sorted.size() - 1;
    audit->max_increase = std::max(audit->max_increase, increase);
    if (increase > 1e-9) ++audit->violations;
    assert(increase <= 1e-9 && "region merge raised the fusion energy");
  }
  if (members.size() == 2) return part.Merge(members[0], members[1], normal);
  return part.MergeGroup(members, normal);
}

std::size_t NormalHash(const UnitNormal& n) {
  std::size_t h = 0;
  for (int i = 0; i < n.dim(); ++i) {
    h = h * 1000003u ^ std::hash<double>{}(n[i]);
  }
  return h;
}

}  // namespace

// One FusePass over a partition. Scratch arrays are indexed by region id and
// validated by per-visit stamps, so a visit costs time proportional to the
// links it touches.
class FusionSweep {
 public:
  FusionSweep(RegionPartition& part, double lambda, FusionAudit* audit)
      : part_(part),
        lambda_(lambda),
        audit_(audit),
        stamp_of_(part.point_count(), 0),
        count_(part.point_count(), 0),
        tested_(part.point_count(), 0) {}

  // Joins the component of equal-normal regions around every region.
  void JoinEqualNormals() {
    for (RegionId id : part_.live_regions()) {
      if (!part_.is_live(id)) continue;
      ++stamp_;
      const UnitNormal normal = part_.region(id).normal;
      std::vector<RegionId> group{id};
      stamp_of_[id] = stamp_;
      for (std::size_t i = 0; i < group.size(); ++i) {
        for (RegionLink& l : part_.links_[group[i]]) {
          const RegionId r = part_.Root(l.region);
          if (stamp_of_[r] == stamp_ || !(part_.region(r).normal == normal)) {
            continue;
          }
          stamp_of_[r] = stamp_;
          group.push_back(r);
        }
      }
      if (group.size() > 1) AuditedMerge(part_, group, normal, lambda_, audit_);
    }
  }

  void Sweep() {
    for (RegionId id : part_.live_regions()) {
      if (part_.is_live(id)) Visit(id);
    }
  }

 private:
  // Visits `id`: repeatedly tests the smallest-id untested neighbor of the
  // growing region, which is the order of a rescan of the sorted neighbor
  // list after every merge.
  void Visit(RegionId id) {
    ++stamp_;
    cur_ = id;
    queue_ = {};
    if (by_normal_.bucket_count() > 1024) {
      by_normal_ = {};
    } else {
      by_normal_.clear();
    }
    AddNeighbors(cur_, cur_);
    while (!queue_.empty()) {
      const RegionId r = queue_.top();
      queue_.pop();
      if (!part_.is_live(r) || r == cur_ || tested_[r] == stamp_) continue;
      tested_[r] = stamp_;
      const Region& a = part_.region(cur_);
      const Region& b = part_.region(r);
      if (FusionCost(a.weight, a.normal, b.weight, b.normal) <=
          lambda_ * static_cast<double>(count_[r])) {
        Absorb(r, MergedNormal(a.weight, a.normal, b.weight, b.normal));
        AbsorbEqualNeighbors();
      }
    }
  }

  // Counts the links of `from` towards regions other than the current one
  // and `skip`, queueing newly seen neighbors.
  void AddNeighbors(RegionId from, RegionId skip) {
    for (RegionLink& l : part_.links_[from]) {
      const RegionId r = part_.Root(l.region);
      l.region = r;
      if (r == cur_ || r == skip) continue;
      if (stamp_of_[r] != stamp_) {
        stamp_of_[r] = stamp_;
        count_[r] = 0;
        queue_.push(r);
        by_normal_.emplace(NormalHash(part_.region(r).normal), r);
      }
      count_[r] += l.multiplicity;
    }
  }

  void Absorb(RegionId r, const UnitNormal& normal) {
    AddNeighbors(r, r);
    const RegionId pair[2] = {cur_, r};
    cur_ = AuditedMerge(part_, pair, normal, lambda_, audit_);
  }

  // Joins neighbors that carry exactly the current normal, including those
  // that become neighbors through the joins.
  void AbsorbEqualNeighbors() {
    for (;;) {
      const UnitNormal normal = part_.region(cur_).normal;
      RegionId found = cur_;
      auto [lo, hi] = by_normal_.equal_range(NormalHash(normal));
      for (auto it = lo; it != hi; ++it) {
        const RegionId r = it->second;
        if (r != cur_ && part_.is_live(r) && part_.region(r).normal == normal) {
          found = r;
          break;
        }
      }
      if (found == cur_) return;
      Absorb(found, normal);
    }
  }

  RegionPartition& part_;
  const double lambda_;
  FusionAudit* const audit_;
  std::uint32_t stamp_ = 0;
  RegionId cur_ = 0;
  std::vector<std::uint32_t> stamp_of_;  // neighbor seen in this visit
  std::vector<std::uint32_t> count_;     // links from the current region
  std::vector<std::uint32_t> tested_;
  std::priority_queue<RegionId, std::vector<RegionId>, std::greater<>> queue_;
  std::unordered_multimap<std::size_t, RegionId> by_normal_;
};

RegionPartition FusePass(RegionPartition part, double lambda,
                         FusionAudit* audit) {
  if (!(lambda >= 0.0)) throw Error("lambda must be non-negative");
  // Zero-cost joins of equal-normal neighbors come first. Afterwards no two
  // adjacent regions share a normal, and the sweep keeps it that way: a merge
  // next to a region that already carries the merged normal would otherwise
  // cut that link and raise the energy.
  FusionSweep sweep(part, lambda, audit);
  sweep.JoinEqualNormals();
  sweep.Sweep();
  part.Compact();
  return part;
}

}  // namespace planefit
