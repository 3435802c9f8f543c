// Copyright 2026 The vff Authors
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

#include <cstdint>
#include <initializer_list>
#include <random>

namespace vff {

/// Portable random stream.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the
/// standard. The std distributions are not (they differ between standard
/// libraries), so uniform variates are produced here from the raw 64-bit
/// output: the top 53 bits scaled by 2^-53.
///
/// Streams are split by key derivation: a child seed is the SplitMix64
/// chain over (parent seed, key_0, key_1, ...). Every circuit evaluation
/// derives its own stream from (run seed, step, evaluation index, circuit
/// index), so results do not depend on evaluation order or thread count.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1).
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  /// Uniform integer on [0, n). Rejection sampling, no modulo bias.
  std::uint64_t uniform_index(std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % n;
  }

  static constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }

  static constexpr std::uint64_t derive(std::uint64_t seed,
                                        std::initializer_list<std::uint64_t> keys) {
    std::uint64_t s = splitmix64(seed);
    for (std::uint64_t k : keys) s = splitmix64(s ^ splitmix64(k + 0x632be59bd9b4e019ULL));
    return s;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace vff
