// Copyright 2026 The fpa-equilibria Authors. All rights reserved.
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

#ifndef FPA_PARALLEL_H_
#define FPA_PARALLEL_H_

#include <cstddef>
#include <functional>

namespace fpa {

// Worker count used by library loops. Defaults to FPA_THREADS when set,
// otherwise 1.
int NumThreads();
void SetNumThreads(int threads);

// Runs body(0..count-1) on NumThreads() workers. Results must be written to
// per-index slots so that output does not depend on scheduling. The first
// exception thrown by any call is rethrown after all workers stop.
void ParallelFor(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace fpa

#endif  // FPA_PARALLEL_H_
