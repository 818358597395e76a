/* Copyright 2026 The HSA Authors.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace hsa {

// HSA_THREADS caps the pool; otherwise one worker per hardware thread.
inline unsigned worker_count() {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("HSA_THREADS")) {
    try {
      const long cap = std::stol(env);
      if (cap >= 1) hw = std::min(hw, static_cast<unsigned>(cap));
    } catch (const std::exception&) {
      // unparsable value: ignore the cap
    }
  }
  return hw;
}

// Splits [0, n) into `chunks` contiguous ranges and runs fn(chunk, begin, end)
// for each on a pool of at most `workers` threads. Chunk boundaries depend
// only on (n, chunks), so callers that store per-chunk results and merge them
// in chunk order get the same answer for any thread count.
template <class Fn>
void parallel_chunks(std::size_t n, std::size_t chunks, Fn&& fn, unsigned workers = worker_count()) {
  chunks = std::max<std::size_t>(1, std::min(chunks, n));
  if (n == 0) return;
  auto bounds = [&](std::size_t c) { return std::pair{n * c / chunks, n * (c + 1) / chunks}; };
  workers = static_cast<unsigned>(std::min<std::size_t>(std::max(1u, workers), chunks));
  std::vector<std::exception_ptr> errors(chunks);
  auto run = [&](unsigned w) {
    for (std::size_t c = w; c < chunks; c += workers) {
      try {
        auto [b, e] = bounds(c);
        fn(c, b, e);
      } catch (...) {
        errors[c] = std::current_exception();
      }
    }
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run, w);
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace hsa
