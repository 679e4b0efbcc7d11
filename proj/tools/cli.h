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

#ifndef PLANEFIT_TOOLS_CLI_H_
#define PLANEFIT_TOOLS_CLI_H_

#include <iosfwd>
#include <span>

#include "planefit/metrics.h"
#include "planefit/plane_extraction.h"
#include "planefit/report.h"

namespace planefit::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kFailure = 1;
inline constexpr int kUsage = 2;

// Runs the planefit command line. Normal output goes to `out`, diagnostics
// and usage text to `err`.
int Run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// Every metric computable from a reconstruction and its truth. `normals` is
// the reconstructed normal of each point; labels and positions come from
// `labeled`. e_p and e_q are left empty when there are no planes.
MetricsBlock ComputeMetrics(const GroundTruth& truth,
                            std::span<const UnitNormal> normals,
                            std::span<const Hyperplane> planes,
                            const LabeledCloud& labeled);

}  // namespace planefit::cli

#endif  // PLANEFIT_TOOLS_CLI_H_
