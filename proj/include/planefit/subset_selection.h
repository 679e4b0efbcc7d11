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

#ifndef PLANEFIT_SUBSET_SELECTION_H_
#define PLANEFIT_SUBSET_SELECTION_H_

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "planefit/region_fusion.h"
#include "planefit/vec.h"

namespace planefit {

// Largest squared distance between two unit vectors. Selected-set utilities
// are measured against it so that the empty selection scores zero.
inline constexpr double kSelectionCap = 4.0;

// A group of regions sharing one normal.
struct Candidate {
  UnitNormal normal = UnitNormal::Up(3);
  std::int64_t weight = 0;       // total points over `regions`
  RegionId region_id = 0;        // smallest id in `regions`
  std::vector<RegionId> regions;
};

struct CandidateSet {
  // weight >= tau, sorted by weight descending then region_id ascending.
  std::vector<Candidate> candidates;
  // weight < tau; no say in the objective but still get assigned.
  std::vector<Candidate> filtered;
  std::int64_t tau = 1;
};

// Splits `groups` by tau and orders the retained ones.
CandidateSet MakeCandidateSet(std::vector<Candidate> groups, std::int64_t tau);

// Groups the live regions of `partition` by identical normal.
CandidateSet ExtractCandidates(const RegionPartition& partition,
                               std::int64_t tau);

struct SelectionResult {
  std::vector<UnitNormal> selected;
  // (region id, index into selected), ascending by region id. Covers every
  // region named in the candidate set, filtered ones included.
  std::vector<std::pair<RegionId, std::uint32_t>> assignment;
  double energy = 0.0;  // SelectionUtility(selected)
  bool forced = false;  // the scan kept nothing and the heaviest was taken
};

// Utility maximized by DoubleGreedy:
//   F(V) = sum_{c in candidates} w_c * (4 - min_{v in V} d(c, v)^2)
//          - lambda * |V|,    F({}) = 0,
// with the axial distance d. Filtered groups do not contribute.
double SelectionUtility(std::span<const UnitNormal> selected,
                        const CandidateSet& set, double lambda);

// Deterministic double greedy over the ordered candidates: keep candidate
// i when F(X + i) - F(X) >= F(Y - i) - F(Y). Marginals are maintained
// incrementally. Throws Error when no candidate reaches tau.
SelectionResult DoubleGreedy(const CandidateSet& set, double lambda);

// Index of the selected normal nearest to n; ties go to the lower index.
std::uint32_t NearestSelected(const UnitNormal& n,
                              std::span<const UnitNormal> selected);

// Replaces every region normal by its assigned selected normal. Regions that
// become equal stay separate until the next fusion pass.
RegionPartition AssignRegions(RegionPartition partition,
                              const SelectionResult& result);

}  // namespace planefit

#endif  // PLANEFIT_SUBSET_SELECTION_H_
