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

#ifndef PTEL_NUMERIC_HPP
#define PTEL_NUMERIC_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace ptel {

/// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  CompensatedSum& operator+=(double x) {
    add(x);
    return *this;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

/// Process-wide worker count used by the data-parallel loops. Defaults to the
/// PTEL_WORKERS environment variable, or 1 when unset.
int worker_count();
void set_worker_count(int workers);

namespace detail {
/// True on threads spawned by parallel_map; nested loops then run serially.
inline thread_local bool in_parallel_worker = false;
}  // namespace detail

/// Evaluates fn(i) for i in [0, count) into a vector, splitting the index range
/// into contiguous chunks across worker_count() threads. Output order is the
/// index order regardless of the number of workers.
template <typename T, typename Fn>
std::vector<T> parallel_map(std::size_t count, Fn&& fn) {
  std::vector<T> out(count);
  const std::size_t workers =
      std::min<std::size_t>(static_cast<std::size_t>(std::max(1, worker_count())), count);
  if (workers <= 1 || detail::in_parallel_worker) {
    for (std::size_t i = 0; i < count; ++i) out[i] = fn(i);
    return out;
  }
  std::vector<std::exception_ptr> errors(workers);
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    const std::size_t chunk = (count + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
      const std::size_t lo = w * chunk;
      const std::size_t hi = std::min(count, lo + chunk);
      pool.emplace_back([&, w, lo, hi] {
        detail::in_parallel_worker = true;
        try {
          for (std::size_t i = lo; i < hi; ++i) out[i] = fn(i);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

}  // namespace ptel

#endif  // PTEL_NUMERIC_HPP
