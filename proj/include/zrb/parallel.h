// zrb/parallel.h
//
// Copyright 2026  zrbench authors
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

#ifndef ZRB_PARALLEL_H_
#define ZRB_PARALLEL_H_

#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <utility>
#include <vector>

namespace zrb {

// Runs fn(begin, end) over a static chunking of [0, n) on up to `jobs`
// threads.  Workers must only write to disjoint, preallocated slots; any
// reduction happens after the call, so results never depend on the worker
// count.  The first worker exception is rethrown on the caller.
template <class Fn>
void ParallelChunks(std::size_t n, unsigned jobs, Fn &&fn) {
  if (n == 0) return;
  std::size_t workers = jobs == 0 ? 1 : jobs;
  if (workers > n) workers = n;
  if (workers <= 1) {
    fn(std::size_t{0}, n);
    return;
  }
  std::mutex error_mutex;
  std::exception_ptr error;
  std::vector<std::thread> threads;
  threads.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    std::size_t begin = n * w / workers;
    std::size_t end = n * (w + 1) / workers;
    threads.emplace_back([&, begin, end]() {
      try {
        fn(begin, end);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    });
  }
  for (auto &t : threads) t.join();
  if (error) std::rethrow_exception(error);
}

// Element-wise flavor of ParallelChunks.
template <class Fn>
void ParallelFor(std::size_t n, unsigned jobs, Fn &&fn) {
  ParallelChunks(n, jobs, [&fn](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) fn(i);
  });
}

}  // namespace zrb

#endif  // ZRB_PARALLEL_H_
