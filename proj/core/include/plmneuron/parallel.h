// Copyright 2026 The plmneuron Authors
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

#ifndef PLMNEURON_PARALLEL_H_
#define PLMNEURON_PARALLEL_H_

#include <algorithm>
#include <cstddef>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace plmneuron {

// Calls fn(i) for i in [0, n) on up to `workers` threads, worker w taking
// i = w, w + workers, ... The first exception (lowest worker) is rethrown
// after all threads finish.
inline void ParallelFor(std::size_t n, int workers,
                        const std::function<void(std::size_t)>& fn) {
  if (workers <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  const std::size_t w_count = std::min<std::size_t>(workers, n);
  std::vector<std::exception_ptr> errors(w_count);
  std::vector<std::thread> threads;
  for (std::size_t w = 0; w < w_count; ++w) {
    threads.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < n; i += w_count) fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (std::thread& t : threads) t.join();
  for (const std::exception_ptr& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace plmneuron

#endif  // PLMNEURON_PARALLEL_H_
