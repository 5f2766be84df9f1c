// Copyright 2026 The sumprod authors
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

namespace sumprod {

/// Fixed, documented generator so every report is reproducible from its
/// seed: splitmix64, with per-trial substreams keyed by (seed, trial).
/// Reports carry kRngAlgorithm as the algorithm identifier.
inline constexpr const char* kRngAlgorithm = "splitmix64/substream-v1";

class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    /// Uniform-enough draw in [0, n); n far below 2^64 at desk scale.
    std::uint64_t below(std::uint64_t n) { return next() % n; }

    bool coin(std::uint64_t num = 1, std::uint64_t den = 2) { return below(den) < num; }

    /// Substream for one trial: decorrelated from the base seed by index.
    static SplitMix64 substream(std::uint64_t seed, std::uint64_t trial) {
        SplitMix64 g(seed ^ (0xD1B54A32D192ED03ull * (trial + 1)));
        g.next();
        return g;
    }

private:
    std::uint64_t state_;
};

}  // namespace sumprod
