//
// Copyright 2026 The AnonRepro Authors
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
//

#ifndef ANONREPRO_RANDOM_H_
#define ANONREPRO_RANDOM_H_

#include <cmath>
#include <cstdint>
#include <limits>

namespace anonrepro {

// SplitMix64 finalizer. Used to derive independent sub-stream keys.
constexpr uint64_t Mix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// A keyed random stream. Children are derived from the key alone, never from
// consumed state, so a (seed, trial, component) path always names the same
// stream regardless of which worker evaluates it.
//
// Draws follow the SplitMix64 sequence, which makes streams cheap to create.
// Distributions are implemented here rather than with <random> distributions,
// whose output is implementation-defined.
class RandomStream {
 public:
  explicit RandomStream(uint64_t key) : key_(key), state_(Mix64(key)) {}

  uint64_t key() const { return key_; }

  RandomStream Child(uint64_t index) const {
    return RandomStream(Mix64(key_ ^ Mix64(index ^ 0x5851f42d4c957f2dULL)));
  }

  uint64_t NextU64() {
    const uint64_t x = Mix64(state_);
    state_ += 0x9e3779b97f4a7c15ULL;
    return x;
  }

  // Uniform in [0, n). n must be positive.
  uint64_t UniformBelow(uint64_t n) {
    const uint64_t limit = std::numeric_limits<uint64_t>::max() -
                           std::numeric_limits<uint64_t>::max() % n;
    uint64_t x;
    do {
      x = NextU64();
    } while (x >= limit);
    return x % n;
  }

  // Uniform over the closed integer range [lo, hi].
  int64_t UniformInt(int64_t lo, int64_t hi) {
    const uint64_t span = static_cast<uint64_t>(hi) - static_cast<uint64_t>(lo);
    if (span == std::numeric_limits<uint64_t>::max()) {
      return static_cast<int64_t>(NextU64());
    }
    return static_cast<int64_t>(static_cast<uint64_t>(lo) +
                                UniformBelow(span + 1));
  }

  // Uniform in [0, 1) with 53 bits of resolution.
  double UniformUnit() {
    return static_cast<double>(NextU64() >> 11) * 0x1.0p-53;
  }

  // Uniform in [lo, hi).
  double UniformReal(double lo, double hi) {
    const double x = lo + (hi - lo) * UniformUnit();
    return x < hi ? x : std::nextafter(hi, lo);
  }

 private:
  uint64_t key_;
  uint64_t state_;
};

}  // namespace anonrepro

#endif  // ANONREPRO_RANDOM_H_
