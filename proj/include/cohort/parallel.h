// include/cohort/parallel.h

// Copyright 2026  The cohort authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef COHORT_PARALLEL_H_
#define COHORT_PARALLEL_H_

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace cohort {

/// Runs fn(task) for every task in [0, num_tasks) on up to num_threads
/// workers. Tasks are handed out in contiguous blocks; callers that need
/// bit-identical results keep per-task outputs separate and combine them in
/// task order afterwards.
template <typename Fn>
void ParallelFor(std::size_t num_tasks, int num_threads, Fn &&fn) {
  const std::size_t workers =
      std::min<std::size_t>(num_tasks, static_cast<std::size_t>(std::max(1, num_threads)));
  if (workers <= 1) {
    for (std::size_t t = 0; t < num_tasks; ++t) fn(t);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      const std::size_t begin = num_tasks * w / workers;
      const std::size_t end = num_tasks * (w + 1) / workers;
      for (std::size_t t = begin; t < end; ++t) fn(t);
    });
  }
  for (auto &th : pool) th.join();
}

}  // namespace cohort

#endif  // COHORT_PARALLEL_H_
