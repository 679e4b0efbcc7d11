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

#ifndef PLANEFIT_REPORT_H_
#define PLANEFIT_REPORT_H_

#include <optional>
#include <string>
#include <vector>

#include "planefit/global_l0.h"
#include "planefit/plane_extraction.h"

namespace planefit {

struct MetricsBlock {
  std::optional<double> e_n;
  std::optional<double> e_p;
  std::optional<double> e_q;
  std::optional<double> gce;
  std::optional<double> lce;
};

// Summary of one reconstruction. ToJson emits the keys in this order:
// input, dim, points, config {k, tau, lambda_l, lambda_g, lambda_floor,
// normal_k, estimate_normals, downsample}, selected_normals, planes,
// outliers, iterations, degenerate_normals, timings_ms {normals, graph,
// fusion, selection, extraction, total}, metrics {e_n, e_p, e_q, gce, lce}
// (only when present, absent entries are omitted), trace [{lambda, regions,
// candidates, selected}].
struct RunReport {
  std::string input;
  int dim = 3;
  std::size_t points = 0;
  GlobalL0Config config;
  double downsample = 0.0;
  std::size_t selected_normals = 0;
  std::size_t planes = 0;
  std::size_t outliers = 0;
  int iterations = 0;
  std::size_t degenerate_normals = 0;
  PhaseTimings timings;
  double extraction_ms = 0.0;
  std::optional<MetricsBlock> metrics;
  std::vector<IterationTrace> trace;

  // Pretty-printed JSON with a trailing newline.
  std::string ToJson() const;
};

RunReport MakeReport(const std::string& input, const GlobalL0Config& config,
                     const ReconstructionResult& result,
                     const PlaneExtraction& extraction);

}  // namespace planefit

#endif  // PLANEFIT_REPORT_H_
