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

#ifndef STABLESIM_RANDOM_STREAM_HPP_
#define STABLESIM_RANDOM_STREAM_HPP_

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>

namespace stablesim {

/**
 * Seedable, splittable source of uniform, exponential and gaussian draws.
 *
 * Engine is xoshiro256++; the 256-bit state is filled by SplitMix64 from a
 * mix of (seed, stream_id). The draw sequence is a pure function of that
 * pair, so two streams constructed alike produce bit-identical output.
 * Streams are plain values: copy one to fork it, move it to hand it to a
 * worker.
 */
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed, std::uint64_t stream_id = 0)
      : seed_(seed), stream_id_(stream_id) {
    std::uint64_t x = mix64(seed) ^ rotl(mix64(~stream_id), 17);
    x += stream_id * 0xD1B54A32D192ED03ULL;
    for (auto& word : state_) word = splitmix64(x);
  }

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream_id() const noexcept { return stream_id_; }

  /// Child stream keyed by `index`, independent of this stream's position.
  RandomStream substream(std::uint64_t index) const {
    const std::uint64_t child =
        mix64(stream_id_ ^ 0x6A09E667F3BCC909ULL) ^ (index + 1) * 0x9FB21C651E98DF25ULL;
    return RandomStream(seed_, mix64(child));
  }

  std::uint64_t next_u64() noexcept {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  /// Uniform on the open interval (0, 1); never returns 0 or 1. 52 bits so
  /// that the top value plus one half is still exactly representable.
  double uniform() noexcept {
    return (static_cast<double>(next_u64() >> 12) + 0.5) * 0x1.0p-52;
  }

  /// Exponential with rate 1, strictly positive.
  double exponential() noexcept { return -std::log(uniform()); }

  /// Standard gaussian (Box-Muller, the second variate is cached).
  double gaussian() noexcept {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double radius = std::sqrt(-2.0 * std::log(uniform()));
    const double angle = 2.0 * std::numbers::pi * uniform();
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
  }

  /// SplitMix64 step: advances `x` and returns the next output.
  static constexpr std::uint64_t splitmix64(std::uint64_t& x) noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    return mix64(x);
  }

  static constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
    return (x << k) | (x >> (64 - k));
  }

  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::array<std::uint64_t, 4> state_{};
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace stablesim

#endif  // STABLESIM_RANDOM_STREAM_HPP_
