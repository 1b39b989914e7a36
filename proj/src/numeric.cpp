// Copyright 2026 The ptel Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ptel/numeric.hpp"

#include <atomic>
#include <cstdlib>

namespace ptel {

namespace {

int initial_worker_count() {
  if (const char* env = std::getenv("PTEL_WORKERS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return 1;
}

std::atomic<int>& workers_setting() {
  static std::atomic<int> workers{initial_worker_count()};
  return workers;
}

}  // namespace

int worker_count() { return workers_setting().load(std::memory_order_relaxed); }

void set_worker_count(int workers) {
  workers_setting().store(workers < 1 ? 1 : workers, std::memory_order_relaxed);
}

}  // namespace ptel
