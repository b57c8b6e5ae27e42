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

#include "fddprobe/support_pipeline.hpp"

#include "fddprobe/errors.hpp"

#include <algorithm>
#include <numeric>

namespace fddprobe
{

namespace
{
constexpr double kAdjacencySlack = 1e-12;
}

SupportSet::SupportSet(SupportGrid grid, int grid_size, std::vector<int> indices)
    : grid_(grid), grid_size_(grid_size), indices_(std::move(indices))
{
    if (grid_size_ < 1)
        throw DomainError("support grid size must be positive");
    std::sort(indices_.begin(), indices_.end());
    indices_.erase(std::unique(indices_.begin(), indices_.end()), indices_.end());
    if (!indices_.empty() && (indices_.front() < 0 || indices_.back() >= grid_size_))
        throw DomainError("support index outside [0, grid_size)");
}

bool SupportSet::contains(int index) const
{
    return std::binary_search(indices_.begin(), indices_.end(), index);
}

void SupportSet::check_grid(int antennas, int oversampling) const
{
    const int expected = grid_ == SupportGrid::UplinkOvercomplete ? antennas * oversampling : antennas;
    if (grid_size_ != expected)
        throw StructuralError("support set lives on a grid of size " + std::to_string(grid_size_) + ", expected " +
                              std::to_string(expected));
}

SupportSet intersect(const std::vector<SupportSet> &sets)
{
    if (sets.empty())
        return {};
    std::vector<int> common = sets.front().indices();
    for (std::size_t k = 1; k < sets.size(); ++k)
    {
        if (sets[k].grid_size() != sets.front().grid_size())
            throw StructuralError("cannot intersect supports on different grids");
        std::vector<int> next;
        std::set_intersection(common.begin(), common.end(), sets[k].indices().begin(), sets[k].indices().end(),
                              std::back_inserter(next));
        common = std::move(next);
    }
    return SupportSet(sets.front().grid(), sets.front().grid_size(), std::move(common));
}

double AngularSupport::length() const
{
    double len = 0.0;
    for (const auto &iv : intervals)
        len += iv.length();
    return len;
}

bool AngularSupport::contains(double theta) const
{
    return std::any_of(intervals.begin(), intervals.end(), [&](const AngleInterval &iv) { return iv.contains(theta); });
}

AngularSupport merge_intervals(std::vector<AngleInterval> intervals)
{
    std::sort(intervals.begin(), intervals.end(), [](const auto &a, const auto &b) { return a.lo < b.lo; });
    AngularSupport out;
    for (const auto &iv : intervals)
    {
        if (!out.intervals.empty() && iv.lo <= out.intervals.back().hi + kAdjacencySlack)
            out.intervals.back().hi = std::max(out.intervals.back().hi, iv.hi);
        else
            out.intervals.push_back(iv);
    }
    return out;
}

RMatrix antenna_selection_matrix(Rng &rng, int m, int M)
{
    if (m < 0 || M < 1)
        throw ConfigError("antenna selection needs m >= 0 and M >= 1");
    if (m > M)
        throw ConfigError("cannot select " + std::to_string(m) + " of " + std::to_string(M) + " antennas");

    // Partial Fisher-Yates shuffle
    std::vector<int> pool(static_cast<std::size_t>(M));
    std::iota(pool.begin(), pool.end(), 0);
    RMatrix B = RMatrix::Zero(m, M);
    for (int r = 0; r < m; ++r)
    {
        const std::size_t j = static_cast<std::size_t>(r) + rng.uniform_index(static_cast<std::size_t>(M - r));
        std::swap(pool[static_cast<std::size_t>(r)], pool[j]);
        B(r, pool[static_cast<std::size_t>(r)]) = 1.0;
    }
    return B;
}

CMatrix sketch_uplink(const RMatrix &B, const ChannelRealization &H_ul, Rng &rng, double sigma)
{
    if (B.cols() != H_ul.H.rows())
        throw StructuralError("selection matrix width does not match the antenna count");
    CMatrix Y = B.cast<cplx>() * H_ul.H;
    if (sigma > 0.0)
    {
        const double variance = sigma * sigma;
        for (Eigen::Index l = 0; l < Y.cols(); ++l)
            for (Eigen::Index i = 0; i < Y.rows(); ++i)
                Y(i, l) += rng.complex_normal(variance);
    }
    return Y;
}

std::vector<int> dominant_indices(const RVector &energy, double fraction)
{
    const double total = energy.sum();
    std::vector<int> order(static_cast<std::size_t>(energy.size()));
    std::iota(order.begin(), order.end(), 0);
    if (!(total > 0.0))
        return {};

    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return energy(a) > energy(b); });
    std::vector<int> chosen;
    double acc = 0.0;
    for (int idx : order)
    {
        if (acc >= fraction * total || !(energy(idx) > 0.0))
            break;
        chosen.push_back(idx);
        acc += energy(idx);
    }
    std::sort(chosen.begin(), chosen.end());
    return chosen;
}

SupportSet estimate_ul_support(const MmvSolution &sol, const ThresholdRule &rule)
{
    const RVector &norms = sol.row_norms;
    const int grid_size = static_cast<int>(norms.size());
    std::vector<int> active;

    if (const auto *abs_rule = std::get_if<AbsoluteThreshold>(&rule))
    {
        for (int i = 0; i < grid_size; ++i)
            if (norms(i) > 0.0 && norms(i) >= abs_rule->epsilon)
                active.push_back(i);
    }
    else
    {
        active = dominant_indices(norms.array().square().matrix(), std::get<EnergyCapture>(rule).fraction);
    }
    return SupportSet(SupportGrid::UplinkOvercomplete, std::max(grid_size, 1), std::move(active));
}

AngularSupport angular_support_from_ul(const SupportSet &s, const ArrayConfig &cfg, int oversampling)
{
    if (s.grid() != SupportGrid::UplinkOvercomplete)
        throw StructuralError("angular support needs an uplink support set");
    s.check_grid(cfg.antennas, oversampling);

    std::vector<AngleInterval> pieces;
    for (int j : s.indices())
    {
        auto iv = angular_interval(cfg, Band::Uplink, s.grid_size(), j);
        pieces.insert(pieces.end(), iv.begin(), iv.end());
    }
    return merge_intervals(std::move(pieces));
}

SupportSet dl_support_from_angular(const AngularSupport &xg, const ArrayConfig &cfg)
{
    const int M = cfg.antennas;
    std::vector<int> indices;
    if (!xg.empty())
    {
        for (int i = 0; i < M; ++i)
        {
            const auto dl = angular_interval(cfg, Band::Downlink, M, i);
            const bool hit = std::any_of(dl.begin(), dl.end(), [&](const AngleInterval &a) {
                return std::any_of(xg.intervals.begin(), xg.intervals.end(),
                                   [&](const AngleInterval &b) { return a.lo <= b.hi && b.lo <= a.hi; });
            });
            if (hit)
                indices.push_back(i);
        }
    }
    return SupportSet(SupportGrid::Downlink, M, std::move(indices));
}

} // namespace fddprobe
