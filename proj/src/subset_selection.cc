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

#include "planefit/subset_selection.h"

#include <algorithm>
#include <limits>
#include <map>
#include <string>

namespace planefit {
namespace {

// Lexicographic key so identical normals group together.
struct NormalLess {
  bool operator()(const UnitNormal& a, const UnitNormal& b) const {
    for (int i = 0; i < Vec::kMaxDim; ++i) {
      if (a[i] != b[i]) return a[i] < b[i];
    }
    return false;
  }
};

constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();

}  // namespace

CandidateSet MakeCandidateSet(std::vector<Candidate> groups, std::int64_t tau) {
  if (tau < 1) throw Error("tau must be positive");
  CandidateSet set;
  set.tau = tau;
  for (Candidate& g : groups) {
    (g.weight >= tau ? set.candidates : set.filtered).push_back(std::move(g));
  }
  std::sort(set.candidates.begin(), set.candidates.end(),
            [](const Candidate& a, const Candidate& b) {
              if (a.weight != b.weight) return a.weight > b.weight;
              return a.region_id < b.region_id;
            });
  return set;
}

CandidateSet ExtractCandidates(const RegionPartition& partition,
                               std::int64_t tau) {
  std::map<UnitNormal, std::size_t, NormalLess> index;
  std::vector<Candidate> groups;
  for (RegionId id : partition.live_regions()) {
    const Region& r = partition.region(id);
    auto [it, inserted] = index.try_emplace(r.normal, groups.size());
    if (inserted) {
      groups.push_back(Candidate{r.normal, 0, id, {}});
    }
    Candidate& g = groups[it->second];
    g.weight += r.weight;
    g.regions.push_back(id);
  }
  return MakeCandidateSet(std::move(groups), tau);
}

double SelectionUtility(std::span<const UnitNormal> selected,
                        const CandidateSet& set, double lambda) {
  if (selected.empty()) return 0.0;
  double f = 0.0;
  for (const Candidate& c : set.candidates) {
    double best = kSelectionCap;
    for (const UnitNormal& v : selected) {
      best = std::min(best, AxialSquaredDistance(c.normal, v));
    }
    f += static_cast<double>(c.weight) * (kSelectionCap - best);
  }
  return f - lambda * static_cast<double>(selected.size());
}

std::uint32_t NearestSelected(const UnitNormal& n,
                              std::span<const UnitNormal> selected) {
  std::uint32_t best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::uint32_t i = 0; i < selected.size(); ++i) {
    const double d = AxialSquaredDistance(n, selected[i]);
    if (d < best_d) {
      best_d = d;
      best = i;
    }
  }
  return best;
}

SelectionResult DoubleGreedy(const CandidateSet& set, double lambda) {
  const auto& cand = set.candidates;
  const std::size_t n = cand.size();
  if (n == 0) {
    throw Error("no region reaches tau = " + std::to_string(set.tau) +
                " support points");
  }
  auto dist = [&](std::size_t r, std::size_t s) {
    return AxialSquaredDistance(cand[r].normal, cand[s].normal);
  };
  auto weight = [&](std::size_t r) {
    return static_cast<double>(cand[r].weight);
  };

  // X side: distance from each candidate to its nearest kept element.
  std::vector<double> best_x(n, kSelectionCap);
  // Y side: nearest and second-nearest remaining elements.
  std::vector<char> in_y(n, 1);
  std::vector<std::uint32_t> best_y(n, kNone), second_y(n, kNone);
  auto rescan = [&](std::size_t r) {
    std::uint32_t b = kNone, s = kNone;
    double db = kSelectionCap, ds = kSelectionCap;
    for (std::size_t e = 0; e < n; ++e) {
      if (!in_y[e]) continue;
      const double d = dist(r, e);
      if (b == kNone || d < db) {
        s = b;
        ds = db;
        b = static_cast<std::uint32_t>(e);
        db = d;
      } else if (s == kNone || d < ds) {
        s = static_cast<std::uint32_t>(e);
        ds = d;
      }
    }
    best_y[r] = b;
    second_y[r] = s;
  };
  auto y_dist = [&](std::size_t r, std::uint32_t e) {
    return e == kNone ? kSelectionCap : dist(r, e);
  };
  for (std::size_t r = 0; r < n; ++r) rescan(r);

  std::vector<std::uint32_t> kept;
  for (std::size_t s = 0; s < n; ++s) {
    double gain = 0.0;  // F(X + s) - F(X) + lambda
    double loss = 0.0;  // F(Y) - F(Y - s) + lambda
    for (std::size_t r = 0; r < n; ++r) {
      const double d = dist(r, s);
      if (d < best_x[r]) gain += weight(r) * (best_x[r] - d);
      if (best_y[r] == s) {
        loss += weight(r) * (y_dist(r, second_y[r]) - y_dist(r, best_y[r]));
      }
    }
    const double a = gain - lambda;
    const double b = lambda - loss;
    if (a >= b) {
      kept.push_back(static_cast<std::uint32_t>(s));
      for (std::size_t r = 0; r < n; ++r) best_x[r] = std::min(best_x[r], dist(r, s));
    } else {
      in_y[s] = 0;
      for (std::size_t r = 0; r < n; ++r) {
        if (best_y[r] == s || second_y[r] == s) rescan(r);
      }
    }
  }

  SelectionResult result;
  if (kept.empty()) {
    kept.push_back(0);
    result.forced = true;
  }
  for (std::uint32_t i : kept) result.selected.push_back(cand[i].normal);
  result.energy = SelectionUtility(result.selected, set, lambda);

  for (const auto* group : {&set.candidates, &set.filtered}) {
    for (const Candidate& c : *group) {
      const std::uint32_t idx = NearestSelected(c.normal, result.selected);
      for (RegionId id : c.regions) result.assignment.emplace_back(id, idx);
    }
  }
  std::sort(result.assignment.begin(), result.assignment.end());
  return result;
}

RegionPartition AssignRegions(RegionPartition partition,
                              const SelectionResult& result) {
  const auto& asg = result.assignment;
  for (RegionId id : partition.live_regions()) {
    auto it = std::lower_bound(
        asg.begin(), asg.end(), id,
        [](const std::pair<RegionId, std::uint32_t>& e, RegionId v) {
          return e.first < v;
        });
    if (it == asg.end() || it->first != id || it->second >= result.selected.size()) {
      throw Error("selection does not assign region " + std::to_string(id));
    }
    partition.SetNormal(id, result.selected[it->second]);
  }
  return partition;
}

}  // namespace planefit
