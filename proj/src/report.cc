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

#include "planefit/report.h"

#include <algorithm>

#include "json.hpp"

namespace planefit {

std::string RunReport::ToJson() const {
  nlohmann::ordered_json j;
  j["input"] = input;
  j["dim"] = dim;
  j["points"] = points;
  j["config"] = {
      {"k", config.k},
      {"tau", config.tau},
      {"lambda_l", config.lambda_l},
      {"lambda_g", config.lambda_g},
      {"lambda_floor", config.lambda_floor},
      {"normal_k", config.normal_k},
      {"estimate_normals", config.estimate_normals},
      {"downsample", downsample},
  };
  j["selected_normals"] = selected_normals;
  j["planes"] = planes;
  j["outliers"] = outliers;
  j["iterations"] = iterations;
  j["degenerate_normals"] = degenerate_normals;
  j["timings_ms"] = {
      {"normals", timings.normals_ms},   {"graph", timings.graph_ms},
      {"fusion", timings.fusion_ms},     {"selection", timings.selection_ms},
      {"extraction", extraction_ms},     {"total", timings.total_ms},
  };
  if (metrics) {
    nlohmann::ordered_json m = nlohmann::ordered_json::object();
    if (metrics->e_n) m["e_n"] = *metrics->e_n;
    if (metrics->e_p) m["e_p"] = *metrics->e_p;
    if (metrics->e_q) m["e_q"] = *metrics->e_q;
    if (metrics->gce) m["gce"] = *metrics->gce;
    if (metrics->lce) m["lce"] = *metrics->lce;
    j["metrics"] = m;
  }
  nlohmann::ordered_json t = nlohmann::ordered_json::array();
  for (const IterationTrace& it : trace) {
    t.push_back({{"lambda", it.lambda},
                 {"regions", it.regions},
                 {"candidates", it.candidates},
                 {"selected", it.selected}});
  }
  j["trace"] = t;
  return j.dump(2) + "\n";
}

RunReport MakeReport(const std::string& input, const GlobalL0Config& config,
                     const ReconstructionResult& result,
                     const PlaneExtraction& extraction) {
  RunReport r;
  r.input = input;
  r.dim = result.cloud.dim();
  r.points = result.cloud.size();
  r.config = config;
  r.selected_normals = CountDistinctNormals(result);
  r.planes = extraction.planes.size();
  r.outliers = static_cast<std::size_t>(
      std::count(extraction.labeled.labels.begin(), extraction.labeled.labels.end(), kOutlier));
  r.iterations = result.iterations;
  r.degenerate_normals = result.degenerate_normals;
  r.timings = result.timings;
  r.trace = result.trace;
  return r;
}

}  // namespace planefit
