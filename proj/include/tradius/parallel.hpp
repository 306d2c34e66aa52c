// Copyright 2026 The tradius Authors
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

#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <ostream>
#include <thread>
#include <vector>

namespace tradius {

/// Knobs shared by every enumeration-heavy analysis.
struct Options {
  /// Worker threads; 0 means one per available core.
  unsigned threads = 0;
  /// Largest crash round enumerated; 0 means the node count n.
  int horizon = 0;
  /// Where to report parameter clamping. Silent when null.
  std::ostream* warnings = nullptr;
};

inline unsigned resolve_threads(unsigned requested) {
  if (requested != 0) return requested;
  return std::max(1U, std::thread::hardware_concurrency());
}

/// Splits [0, count) into contiguous chunks and hands them to workers.
///
/// Every worker owns one copy of `init`; `fn(state, begin, end)` folds a chunk
/// into it. Chunks are claimed dynamically, so callers must only combine the
/// returned states with order-independent reductions (or by index).
template <class State, class Fn>
std::vector<State> parallel_scan(std::size_t count, unsigned threads, const State& init,
                                 Fn&& fn) {
  const unsigned workers =
      static_cast<unsigned>(std::min<std::size_t>(resolve_threads(threads),
                                                  std::max<std::size_t>(count, 1)));
  std::vector<State> states(workers, init);
  if (workers == 1) {
    if (count > 0) fn(states[0], std::size_t{0}, count);
    return states;
  }

  const std::size_t chunk = std::max<std::size_t>(1, count / (workers * 8));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto work = [&](unsigned w) {
    try {
      for (;;) {
        const std::size_t begin = next.fetch_add(chunk);
        if (begin >= count) break;
        fn(states[w], begin, std::min(count, begin + chunk));
      }
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
      next.store(count);
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work, w);
  work(0);
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
  return states;
}

/// Runs `fn(i)` for every i in [0, count).
template <class Fn>
void parallel_for(std::size_t count, unsigned threads, Fn&& fn) {
  struct Empty {};
  parallel_scan(count, threads, Empty{}, [&](Empty&, std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) fn(i);
  });
}

}  // namespace tradius
