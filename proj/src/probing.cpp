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

#include "fddprobe/probing.hpp"

#include "fddprobe/errors.hpp"

#include <cmath>
#include <iostream>
#include <numeric>

namespace fddprobe
{

namespace
{

void check_dims(int T, int M, double power)
{
    if (T < 1 || M < 1)
        throw ConfigError("probing matrix needs T >= 1 and M >= 1");
    if (!(power > 0.0))
        throw ConfigError("probing power must be positive");
}

void fill_gaussian_rows(Rng &rng, CMatrix &phi, Eigen::Index first_row, double power)
{
    const double target = std::sqrt(power);
    for (Eigen::Index r = first_row; r < phi.rows(); ++r)
    {
        for (Eigen::Index c = 0; c < phi.cols(); ++c)
            phi(r, c) = rng.complex_normal(1.0);
        phi.row(r) *= target / phi.row(r).norm();
    }
}

} // namespace

int choose_T(const std::vector<SupportSet> &supports, std::optional<int> override_T, bool *fallback)
{
    if (fallback)
        *fallback = false;
    if (supports.empty())
        throw ConfigError("choose_T needs at least one support set");
    if (override_T)
    {
        if (*override_T < 1)
            throw ConfigError("T override must be positive");
        return *override_T;
    }

    std::size_t largest = 0;
    for (const auto &s : supports)
        largest = std::max(largest, s.size());
    if (largest == 0)
    {
        std::cerr << "warning: every estimated downlink support is empty; probing with T = 1\n";
        if (fallback)
            *fallback = true;
        return 1;
    }
    return static_cast<int>(largest);
}

ProbingMatrix gaussian_probing(Rng &rng, int T, int M, double power)
{
    check_dims(T, M, power);
    ProbingMatrix p;
    p.phi.resize(T, M);
    p.power = power;
    p.kind = ProbingKind::Gaussian;
    fill_gaussian_rows(rng, p.phi, 0, power);
    return p;
}

ProbingMatrix antenna_selection_probing(Rng &rng, int T, int M, double power)
{
    check_dims(T, M, power);
    if (T > M)
        throw ConfigError("antenna-selection probing needs T <= M (T = " + std::to_string(T) + ", M = " +
                          std::to_string(M) + ")");

    std::vector<int> pool(static_cast<std::size_t>(M));
    std::iota(pool.begin(), pool.end(), 0);
    ProbingMatrix p;
    p.phi = CMatrix::Zero(T, M);
    p.power = power;
    p.kind = ProbingKind::AntennaSelection;
    const double amplitude = std::sqrt(power);
    for (int r = 0; r < T; ++r)
    {
        const std::size_t j = static_cast<std::size_t>(r) + rng.uniform_index(static_cast<std::size_t>(M - r));
        std::swap(pool[static_cast<std::size_t>(r)], pool[j]);
        p.phi(r, pool[static_cast<std::size_t>(r)]) = amplitude;
    }
    return p;
}

ProbingMatrix hybrid_probing(Rng &rng, const std::vector<SupportSet> &supports, int T, int M, double power, const CMatrix &F)
{
    check_dims(T, M, power);
    if (F.rows() != M || F.cols() != M)
        throw StructuralError("hybrid probing needs the M x M DFT basis");
    for (const auto &s : supports)
        if (s.grid() != SupportGrid::Downlink || s.grid_size() != M)
            throw StructuralError("hybrid probing needs downlink supports on the M grid");

    const SupportSet common = intersect(supports);
    const auto n_common = static_cast<int>(common.size());
    if (n_common > T)
        throw ConfigError("common support has " + std::to_string(n_common) + " indices but only T = " + std::to_string(T) +
                          " probing beams are available");

    ProbingMatrix p;
    p.phi.resize(T, M);
    p.power = power;
    p.kind = ProbingKind::Hybrid;
    const double amplitude = std::sqrt(power);
    for (int r = 0; r < n_common; ++r)
    {
        const int j = common.indices()[static_cast<std::size_t>(r)];
        // F columns have unit norm
        p.phi.row(r) = amplitude * F.col(j).adjoint();
    }
    fill_gaussian_rows(rng, p.phi, n_common, power);
    return p;
}

CVector measure_downlink(const ProbingMatrix &phi, const CVector &h_dl, Rng &rng, double noise_variance)
{
    if (phi.phi.cols() != h_dl.size())
        throw StructuralError("probing matrix width does not match the channel length");
    CVector y = phi.phi * h_dl;
    if (noise_variance > 0.0)
        for (Eigen::Index t = 0; t < y.size(); ++t)
            y(t) += rng.complex_normal(noise_variance);
    return y;
}

} // namespace fddprobe
