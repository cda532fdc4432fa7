// SPDX-License-Identifier: Apache-2.0
//
// holoris: beam-pattern synthesis and closed-loop channel estimation for
// RIS-aided wideband MIMO simulation
// Copyright (C) 2026 The holoris authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "common.hpp"

namespace holoris {

/// splitmix64 finalizer, used to mix seeds and derive substreams.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Derive a substream seed from a parent seed and one or more stream tags.
inline std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t tag) {
    return mix64(seed ^ mix64(tag));
}
inline std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t tag1, std::uint64_t tag2) {
    return substream_seed(substream_seed(seed, tag1), tag2);
}

/// Deterministic random stream.
///
/// Engine: std::mt19937_64 (bit-exact across standard libraries). Variates
/// are produced by hand (53-bit uniforms, Box-Muller normals) instead of
/// std::*_distribution so that dumped realizations are portable: the same
/// (seed, draw sequence) reproduces the same bytes on any conforming
/// platform. Substreams are derived with splitmix64 mixing, see
/// substream_seed().
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform in [0, 1) with 53-bit resolution.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Standard normal via Box-Muller (fresh pair each call, second value cached).
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        while (u1 <= 0.0)
            u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        spare_ = r * std::sin(two_pi * u2);
        have_spare_ = true;
        return r * std::cos(two_pi * u2);
    }

    /// Circularly-symmetric complex normal with E|z|^2 = 1.
    cd cnormal() {
        const double s = std::sqrt(0.5);
        const double re = normal();
        const double im = normal();
        return {s * re, s * im};
    }

    /// Complex AWGN sample with E|n|^2 = variance.
    cd awgn(double variance) { return std::sqrt(variance) * cnormal(); }

    /// Uniform phase in [0, 2*pi).
    double phase() { return uniform(0.0, two_pi); }

    /// Uniform integer in [0, n).
    std::uint64_t below(std::uint64_t n) {
        // rejection sampling, unbiased
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t v = engine_();
        while (v >= limit)
            v = engine_();
        return v % n;
    }

    std::mt19937_64 &engine() { return engine_; }

  private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

/// Deterministic Fisher-Yates shuffle driven by this stream.
template <typename T>
void shuffle(std::vector<T> &v, Rng &rng) {
    for (std::size_t i = v.size(); i > 1; --i) {
        const std::size_t k = static_cast<std::size_t>(rng.below(i));
        std::swap(v[i - 1], v[k]);
    }
}

} // namespace holoris
