// Copyright 2026 The autolabel-kit Authors.
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

#ifndef ALKIT_PARALLEL_H_
#define ALKIT_PARALLEL_H_

#include <cstddef>
#include <functional>

namespace alkit {

// Environment variable capping worker threads.
inline constexpr const char* kWorkersEnv = "AUTOLABEL_WORKERS";

// Worker count from AUTOLABEL_WORKERS, else hardware concurrency. Always >= 1.
int DefaultWorkers();

// Runs fn(i) for i in [0, n) on up to `workers` threads. Callers write
// results into per-index slots so the outcome is schedule-independent. If
// any call throws, the exception of the lowest failing index is rethrown
// after all threads finish.
void ParallelFor(std::size_t n, int workers,
                 const std::function<void(std::size_t)>& fn);

}  // namespace alkit

#endif  // ALKIT_PARALLEL_H_
