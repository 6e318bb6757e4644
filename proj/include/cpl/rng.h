// Copyright 2026 The cpl Authors
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

#ifndef CPL_RNG_H
#define CPL_RNG_H

#include <cstdint>
#include <random>

namespace cpl {

/// Deterministic generator used for all sampling: std::mt19937_64 seeded with a 64-bit value.
/// Doubles are built from the top 53 bits so results do not depend on the standard library's
/// distribution implementations.
class Rng {
   public:
    explicit Rng(uint64_t seed) : engine_(seed) {
    }

    uint64_t next() {
        return engine_();
    }
    /// Uniform in [0, 1).
    double uniform() {
        return (double)(engine_() >> 11) * 0x1.0p-53;
    }
    bool bit() {
        return engine_() >> 63;
    }
    /// Uniform in [0, bound).
    uint64_t below(uint64_t bound) {
        uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        uint64_t r;
        do {
            r = engine_();
        } while (r >= limit);
        return r % bound;
    }

   private:
    std::mt19937_64 engine_;
};

/// SplitMix64 mix of (base, stream), used to give independent trajectories their own seeds.
inline uint64_t derive_seed(uint64_t base, uint64_t stream) {
    uint64_t z = base + 0x9E3779B97F4A7C15ull * (stream + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

}  // namespace cpl

#endif
