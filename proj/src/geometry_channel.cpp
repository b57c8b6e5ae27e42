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

#include "fddprobe/geometry_channel.hpp"

#include "fddprobe/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace fddprobe
{

namespace
{

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_angle(const ArrayConfig &cfg, double theta)
{
    if (!(theta >= -cfg.theta_max && theta < cfg.theta_max))
        throw DomainError("angle " + std::to_string(theta) + " rad is outside [-theta_max, theta_max)");
}

bool overlaps(const AngleInterval &a, const AngleInterval &b)
{
    return a.lo < b.hi && b.lo < a.hi;
}

} // namespace

// ---------- ArrayConfig ----------

ArrayConfig ArrayConfig::standard(int antennas, double theta_max, double wavelength_ratio)
{
    ArrayConfig cfg;
    cfg.antennas = antennas;
    cfg.theta_max = theta_max;
    cfg.wavelength_ratio = wavelength_ratio;
    cfg.spacing_ul = 1.0 / (2.0 * std::sin(theta_max));
    cfg.validate();
    return cfg;
}

void ArrayConfig::validate() const
{
    if (antennas < 1)
        throw ConfigError("antenna count must be positive");
    if (!(spacing_ul > 0.0))
        throw ConfigError("antenna spacing must be positive");
    if (!(wavelength_ratio > 0.0))
        throw ConfigError("wavelength ratio must be positive");
    if (!(theta_max > 0.0 && theta_max <= std::numbers::pi / 2.0))
        throw ConfigError("theta_max must lie in (0, pi/2]");
}

// ---------- ScatteringFunction ----------

double ScatteringFunction::total_power() const
{
    double p = 0.0;
    for (std::size_t k = 0; k < intervals.size(); ++k)
        p += densities[k] * intervals[k].length();
    return p;
}

double ScatteringFunction::support_length() const
{
    double len = 0.0;
    for (const auto &iv : intervals)
        len += iv.length();
    return len;
}

double ScatteringFunction::density_at(double theta) const
{
    for (std::size_t k = 0; k < intervals.size(); ++k)
        if (theta >= intervals[k].lo && theta < intervals[k].hi)
            return densities[k];
    return 0.0;
}

double mpc_interval_length(const ScatterSpec &spec, double theta_max)
{
    if (spec.mpc_count < 1)
        throw ConfigError("scatter spec needs at least one MPC");
    if (!(spec.total_support_fraction > 0.0))
        throw ConfigError("total support fraction must be positive");
    const double total = spec.total_support_fraction * 2.0 * theta_max;
    if (total > 2.0 * theta_max * (1.0 + 1e-12))
        throw ConfigError("total support length exceeds the angular range");
    return std::min(total, 2.0 * theta_max) / spec.mpc_count;
}

AngleInterval sample_mpc_interval(Rng &rng, const ScatterSpec &spec, double theta_max)
{
    const double len = mpc_interval_length(spec, theta_max);
    const double lo = rng.uniform(-theta_max, theta_max - len);
    return {lo, lo + len};
}

ScatteringFunction sample_scattering_function(Rng &rng, const ScatterSpec &spec, double theta_max,
                                              const std::optional<AngleInterval> &shared)
{
    const double len = mpc_interval_length(spec, theta_max);
    if (spec.mpc_count * len > 2.0 * theta_max * (1.0 + 1e-12))
        throw ConfigError("MPC intervals cannot fit disjointly into the angular range");

    std::vector<AngleInterval> intervals;
    if (shared)
    {
        if (shared->lo < -theta_max || shared->hi > theta_max || !(shared->hi > shared->lo))
            throw ConfigError("shared MPC interval must be a non-empty interval inside the angular range");
        intervals.push_back(*shared);
    }

    constexpr int kMaxAttempts = 100000;
    int attempts = 0;
    while (static_cast<int>(intervals.size()) < spec.mpc_count)
    {
        if (++attempts > kMaxAttempts)
            throw ConfigError("could not place non-overlapping MPC intervals; support fraction too large");
        const double lo = rng.uniform(-theta_max, theta_max - len);
        const AngleInterval candidate{lo, lo + len};
        const bool clash = std::any_of(intervals.begin(), intervals.end(),
                                       [&](const AngleInterval &iv) { return overlaps(iv, candidate); });
        if (!clash)
            intervals.push_back(candidate);
    }

    std::sort(intervals.begin(), intervals.end(), [](const auto &a, const auto &b) { return a.lo < b.lo; });

    ScatteringFunction sf;
    sf.intervals = std::move(intervals);
    const double density = 1.0 / sf.support_length();
    sf.densities.assign(sf.intervals.size(), density);
    return sf;
}

int default_grid_points(int antennas, int oversampling)
{
    return std::max(512, 8 * oversampling * antennas);
}

ScatterGrid discretize(const ScatteringFunction &sf, int grid_points)
{
    ScatterGrid grid;
    const double total_len = sf.support_length();
    if (sf.intervals.empty() || !(total_len > 0.0))
        return grid;

    for (std::size_t k = 0; k < sf.intervals.size(); ++k)
    {
        const AngleInterval &iv = sf.intervals[k];
        const long n = std::max(1L, std::lround(grid_points * iv.length() / total_len));
        const double step = iv.length() / static_cast<double>(n);
        for (long g = 0; g < n; ++g)
        {
            grid.angles.push_back(iv.lo + (static_cast<double>(g) + 0.5) * step);
            grid.weights.push_back(sf.densities[k] * step);
        }
    }
    return grid;
}

// ---------- array responses and dictionaries ----------

CVector array_response(const ArrayConfig &cfg, Band band, double theta)
{
    check_angle(cfg, theta);
    const double phase_step = kTwoPi * cfg.spacing(band) * std::sin(theta);
    CVector a(cfg.antennas);
    for (int i = 0; i < cfg.antennas; ++i)
        a(i) = std::polar(1.0, phase_step * i);
    return a;
}

CVector ul_array_response(const ArrayConfig &cfg, double theta)
{
    return array_response(cfg, Band::Uplink, theta);
}

CVector dl_array_response(const ArrayConfig &cfg, double theta)
{
    return array_response(cfg, Band::Downlink, theta);
}

CMatrix dft_basis(int M)
{
    return overcomplete_dft(M, 1);
}

CMatrix overcomplete_dft(int M, int q)
{
    if (M < 1 || q < 1)
        throw ConfigError("DFT dictionary needs M >= 1 and q >= 1");
    const int N = q * M;
    const double scale = 1.0 / std::sqrt(static_cast<double>(M));
    CMatrix F(M, N);
    for (int l = 0; l < N; ++l)
        for (int k = 0; k < M; ++k)
        {
            // k (l - N/2) reduced modulo N keeps the phase argument small
            const long long prod = static_cast<long long>(k) * (2LL * l - N);
            const long long r = ((prod % (2LL * N)) + 2LL * N) % (2LL * N);
            F(k, l) = std::polar(scale, std::numbers::pi * static_cast<double>(r) / static_cast<double>(N));
        }
    return F;
}

// ---------- channel sampling ----------

namespace
{

CMatrix steering_matrix(const ArrayConfig &cfg, Band band, const std::vector<double> &angles)
{
    const double s = cfg.spacing(band);
    CMatrix A(cfg.antennas, static_cast<Eigen::Index>(angles.size()));
    for (std::size_t g = 0; g < angles.size(); ++g)
    {
        const double phase_step = kTwoPi * s * std::sin(angles[g]);
        for (int i = 0; i < cfg.antennas; ++i)
            A(i, static_cast<Eigen::Index>(g)) = std::polar(1.0, phase_step * i);
    }
    return A;
}

} // namespace

ChannelRealization sample_channel(Rng &rng, const ScatteringFunction &sf, const ArrayConfig &cfg, Band band, int subcarriers,
                                  int grid_points, int user_id)
{
    if (subcarriers < 1)
        throw ConfigError("at least one subcarrier is required");
    cfg.validate();

    const ScatterGrid grid = discretize(sf, grid_points);
    const auto G = static_cast<Eigen::Index>(grid.angles.size());

    ChannelRealization out;
    out.user_id = user_id;
    out.band = band;
    if (G == 0)
    {
        out.H = CMatrix::Zero(cfg.antennas, subcarriers);
        return out;
    }

    CMatrix gains(G, subcarriers);
    for (int l = 0; l < subcarriers; ++l)
        for (Eigen::Index g = 0; g < G; ++g)
            gains(g, l) = rng.complex_normal(grid.weights[static_cast<std::size_t>(g)]);

    out.H = steering_matrix(cfg, band, grid.angles) * gains;
    return out;
}

CMatrix analytic_covariance(const ScatteringFunction &sf, const ArrayConfig &cfg, Band band, int grid_points)
{
    const ScatterGrid grid = discretize(sf, grid_points);
    const CMatrix A = steering_matrix(cfg, band, grid.angles);
    RVector w(static_cast<Eigen::Index>(grid.weights.size()));
    for (std::size_t g = 0; g < grid.weights.size(); ++g)
        w(static_cast<Eigen::Index>(g)) = grid.weights[g];
    return A * w.asDiagonal() * A.adjoint();
}

double dirichlet_squared(double psi, int M)
{
    const double den = std::sin(std::numbers::pi * psi);
    if (std::abs(den) < 1e-12)
        return static_cast<double>(M) * static_cast<double>(M);
    const double num = std::sin(std::numbers::pi * psi * M);
    return (num * num) / (den * den);
}

RVector dft_domain_variance(const ScatteringFunction &sf, const ArrayConfig &cfg, Band band, int grid_points)
{
    const ScatterGrid grid = discretize(sf, grid_points);
    const int M = cfg.antennas;
    const double s = cfg.spacing(band);
    RVector var = RVector::Zero(M);
    for (std::size_t g = 0; g < grid.angles.size(); ++g)
    {
        const double u = s * std::sin(grid.angles[g]);
        const double w = grid.weights[g] / M;
        for (int i = 0; i < M; ++i)
            var(i) += w * dirichlet_squared(u - static_cast<double>(i) / M + 0.5, M);
    }
    return var;
}

// ---------- angular intervals ----------

std::vector<AngleInterval> angular_interval(const ArrayConfig &cfg, Band band, int grid_size, int index)
{
    if (grid_size < 1)
        throw DomainError("grid size must be positive");
    if (index < 0 || index >= grid_size)
        throw DomainError("grid index " + std::to_string(index) + " outside [0, " + std::to_string(grid_size) + ")");

    const double s = cfg.spacing(band);
    const double half_width = 1.0 / cfg.antennas;
    const double center = static_cast<double>(index) / grid_size - 0.5;
    const double umax = std::sin(cfg.theta_max);

    // psi(u) = s*u - center for u = sin(theta) in [-umax, umax]; collect every
    // period k with |psi - k| <= half_width
    const double psi_lo = -s * umax - center;
    const double psi_hi = s * umax - center;
    const auto k_first = static_cast<long>(std::floor(psi_lo - half_width));
    const auto k_last = static_cast<long>(std::ceil(psi_hi + half_width));

    std::vector<AngleInterval> pieces;
    for (long k = k_first; k <= k_last; ++k)
    {
        const double u_lo = (center + static_cast<double>(k) - half_width) / s;
        const double u_hi = (center + static_cast<double>(k) + half_width) / s;
        if (u_hi < -umax || u_lo > umax)
            continue;
        const double lo = u_lo <= -umax ? -cfg.theta_max : std::asin(u_lo);
        const double hi = u_hi >= umax ? cfg.theta_max : std::asin(u_hi);
        if (!pieces.empty() && lo <= pieces.back().hi)
            pieces.back().hi = std::max(pieces.back().hi, hi);
        else
            pieces.push_back({lo, hi});
    }
    return pieces;
}

} // namespace fddprobe
