// SPDX-License-Identifier: Apache-2.0
//
// fddprobe: downlink probing and feedback simulation for FDD massive MIMO
// Copyright (C) 2026 The fddprobe Authors
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

#ifndef FDDPROBE_RNG_HPP
#define FDDPROBE_RNG_HPP

#include <complex>
#include <cstddef>
#include <cstdint>
#include <random>
#include <string_view>

namespace fddprobe
{

// Random stream with a platform-independent output sequence.
//
// The engine is std::mt19937_64, whose output is fixed by the standard. The
// standard <random> distributions are not (their algorithms are left to the
// library vendor), so uniform and Gaussian variates are produced here from
// raw 64-bit words. This keeps result files byte-identical across toolchains.
class Rng
{
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform();

    /// Uniform on [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Unbiased integer in [0, n). Requires n > 0.
    std::size_t uniform_index(std::size_t n);

    /// Standard normal variate (Box-Muller, second value cached).
    double normal();

    /// Circularly-symmetric complex Gaussian with E|z|^2 = variance.
    std::complex<double> complex_normal(double variance = 1.0);

private:
    std::mt19937_64 engine_;
    double cached_normal_ = 0.0;
    bool has_cached_normal_ = false;
};

// Seed of a named sub-stream. The derivation hashes the stream name (FNV-1a)
// and mixes it with the parent seed and two integer keys through SplitMix64
// finalizers, so that streams keyed by different names or indices are
// statistically independent and stable across releases.
std::uint64_t derive_seed(std::uint64_t parent, std::string_view stream, std::uint64_t key_a = 0, std::uint64_t key_b = 0);

} // namespace fddprobe

#endif
