// Copyright 2026 The nogo Authors
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

#ifndef NOGO_RNG_HPP
#define NOGO_RNG_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <random>

namespace nogo {

inline constexpr std::uint64_t kDefaultSeed = 42;

/// Seeded random source shared by every sampling routine. Draws depend only
/// on the seed: mt19937_64 with a fixed 53-bit uniform mapping.
///
/// Not thread-safe; use one instance per thread.
class Rng {
   public:
    explicit Rng(std::uint64_t seed = kDefaultSeed) : engine_(seed) {
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    bool bernoulli(double p) {
        return uniform() < p;
    }

    /// Uniform index in [0, n). n must be positive.
    std::size_t uniform_index(std::size_t n) {
        auto k = static_cast<std::size_t>(uniform() * static_cast<double>(n));
        return std::min(k, n - 1);
    }

    std::mt19937_64 &engine() {
        return engine_;
    }

   private:
    std::mt19937_64 engine_;
};

}  // namespace nogo

#endif
