// Copyright 2026 The stablesim Authors.
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

#ifndef STABLESIM_BATCH_HPP_
#define STABLESIM_BATCH_HPP_

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

#include "stablesim/random_stream.hpp"

namespace stablesim {

/// Draws per substream in batch sampling. Fixed so results do not depend on
/// how many workers share the batch.
inline constexpr std::size_t kChunkSize = std::size_t{1} << 16;

/**
 * Fills a vector with `n` draws of `draw(stream)`. Chunk c of kChunkSize
 * consecutive draws uses `base.substream(c)`, so the output is identical for
 * every worker count. `workers == 0` means one per hardware thread.
 */
template <typename Draw>
std::vector<double> sample_batch(std::size_t n, const RandomStream& base, Draw draw,
                                 unsigned workers = 0) {
  std::vector<double> out(n);
  const std::size_t chunks = (n + kChunkSize - 1) / kChunkSize;
  auto run_chunk = [&](std::size_t c) {
    RandomStream stream = base.substream(c);
    const std::size_t begin = c * kChunkSize;
    const std::size_t end = std::min(n, begin + kChunkSize);
    for (std::size_t i = begin; i < end; ++i) out[i] = draw(stream);
  };

  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, chunks));
  if (workers <= 1) {
    for (std::size_t c = 0; c < chunks; ++c) run_chunk(c);
    return out;
  }

  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t c = w; c < chunks; c += workers) run_chunk(c);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return out;
}

}  // namespace stablesim

#endif  // STABLESIM_BATCH_HPP_
