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

#include "fddprobe/rng.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace fddprobe
{

namespace
{

std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::uint64_t fnv1a(std::string_view s)
{
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (unsigned char c : s)
    {
        h ^= c;
        h *= 0x100000001B3ULL;
    }
    return h;
}

} // namespace

double Rng::uniform()
{
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

std::size_t Rng::uniform_index(std::size_t n)
{
    // Rejection sampling on the top of the 64-bit range removes modulo bias
    const std::uint64_t range = static_cast<std::uint64_t>(n);
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % range;
    std::uint64_t x = engine_();
    while (x >= limit)
        x = engine_();
    return static_cast<std::size_t>(x % range);
}

double Rng::normal()
{
    if (has_cached_normal_)
    {
        has_cached_normal_ = false;
        return cached_normal_;
    }
    double u1 = uniform();
    while (u1 <= 0.0)
        u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double phi = 2.0 * std::numbers::pi * u2;
    cached_normal_ = r * std::sin(phi);
    has_cached_normal_ = true;
    return r * std::cos(phi);
}

std::complex<double> Rng::complex_normal(double variance)
{
    const double s = std::sqrt(0.5 * variance);
    const double re = normal();
    const double im = normal();
    return {s * re, s * im};
}

std::uint64_t derive_seed(std::uint64_t parent, std::string_view stream, std::uint64_t key_a, std::uint64_t key_b)
{
    std::uint64_t h = splitmix64(parent ^ 0x6A09E667F3BCC909ULL);
    h = splitmix64(h ^ fnv1a(stream));
    h = splitmix64(h ^ key_a);
    h = splitmix64(h ^ (key_b + 0x3C6EF372FE94F82BULL));
    return h;
}

} // namespace fddprobe
