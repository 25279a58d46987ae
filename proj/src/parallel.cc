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

#include "fpa/parallel.h"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace fpa {
namespace {

int InitialThreads() {
  const char* env = std::getenv("FPA_THREADS");
  if (env == nullptr) return 1;
  try {
    return std::max(1, std::stoi(env));
  } catch (const std::exception&) {
    return 1;
  }
}

std::atomic<int>& ThreadSetting() {
  static std::atomic<int> threads(InitialThreads());
  return threads;
}

// Nested calls run inline so the pool never oversubscribes.
thread_local bool in_parallel_region = false;

}  // namespace

int NumThreads() { return ThreadSetting().load(); }

void SetNumThreads(int threads) { ThreadSetting().store(std::max(1, threads)); }

void ParallelFor(std::size_t count,
                 const std::function<void(std::size_t)>& body) {
  std::size_t workers =
      std::min<std::size_t>(static_cast<std::size_t>(NumThreads()), count);
  if (workers <= 1 || in_parallel_region) {
    for (std::size_t k = 0; k < count; ++k) body(k);
    return;
  }
  std::atomic<std::size_t> next(0);
  std::atomic<bool> failed(false);
  std::exception_ptr error;
  std::mutex error_mutex;
  auto run = [&] {
    in_parallel_region = true;
    while (!failed.load()) {
      std::size_t k = next.fetch_add(1);
      if (k >= count) break;
      try {
        body(k);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        failed.store(true);
      }
    }
    in_parallel_region = false;
  };
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(run);
  run();
  for (std::thread& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace fpa
