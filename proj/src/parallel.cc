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

#include "planefit/parallel.h"

#include <atomic>
#include <cstdlib>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace planefit {
namespace {

std::atomic<int> g_override{0};

int FromEnvironment() {
#ifdef _OPENMP
  int n = omp_get_max_threads();
#else
  int n = 1;
#endif
  if (const char* env = std::getenv("PLANEFIT_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) n = static_cast<int>(v);
  }
  return n;
}

}  // namespace

int MaxThreads() {
#ifdef _OPENMP
  const int o = g_override.load();
  return o > 0 ? o : FromEnvironment();
#else
  return 1;
#endif
}

void SetMaxThreads(int n) { g_override.store(n > 0 ? n : 0); }

}  // namespace planefit
