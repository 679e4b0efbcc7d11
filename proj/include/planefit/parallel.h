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

#ifndef PLANEFIT_PARALLEL_H_
#define PLANEFIT_PARALLEL_H_

namespace planefit {

// Number of threads the OpenMP kernels use: PLANEFIT_THREADS when set to a
// positive integer, otherwise the OpenMP default. Always 1 without OpenMP.
int MaxThreads();

// Overrides PLANEFIT_THREADS for the current process; n <= 0 restores the
// environment-derived value.
void SetMaxThreads(int n);

}  // namespace planefit

#endif  // PLANEFIT_PARALLEL_H_
