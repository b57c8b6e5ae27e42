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

#ifndef FDDPROBE_SUPPORT_PIPELINE_HPP
#define FDDPROBE_SUPPORT_PIPELINE_HPP

#include "fddprobe/geometry_channel.hpp"
#include "fddprobe/mmv_solver.hpp"

#include <variant>
#include <vector>

namespace fddprobe
{

enum class SupportGrid
{
    UplinkOvercomplete, // qM points
    Downlink            // M points
};

// Sorted set of indices on a DFT grid
class SupportSet
{
public:
    SupportSet() = default;
    SupportSet(SupportGrid grid, int grid_size, std::vector<int> indices);

    SupportGrid grid() const { return grid_; }
    int grid_size() const { return grid_size_; }
    const std::vector<int> &indices() const { return indices_; }
    std::size_t size() const { return indices_.size(); }
    bool empty() const { return indices_.empty(); }
    bool contains(int index) const;

    // Validates the grid size against the array (qM for the uplink grid, M for the downlink one)
    void check_grid(int antennas, int oversampling) const;

private:
    SupportGrid grid_ = SupportGrid::Downlink;
    int grid_size_ = 0;
    std::vector<int> indices_;
};

SupportSet intersect(const std::vector<SupportSet> &sets);

// Union of disjoint closed angular intervals inside the scanned range
struct AngularSupport
{
    std::vector<AngleInterval> intervals;

    bool empty() const { return intervals.empty(); }
    double length() const;
    bool contains(double theta) const;
};

// Sort and merge intervals that overlap or touch (1e-12 slack)
AngularSupport merge_intervals(std::vector<AngleInterval> intervals);

// m x M antenna selection: one 1 per row, distinct columns (an m-subset of antennas)
RMatrix antenna_selection_matrix(Rng &rng, int m, int M);

// Y = B H + N, N with i.i.d. CN(0, sigma^2) entries
CMatrix sketch_uplink(const RMatrix &B, const ChannelRealization &H_ul, Rng &rng, double sigma);

struct AbsoluteThreshold
{
    double epsilon = 0.0;
};

struct EnergyCapture
{
    double fraction = 0.99;
};

using ThresholdRule = std::variant<AbsoluteThreshold, EnergyCapture>;

// Smallest set of largest entries of `energy` whose sum reaches fraction * total
// (ties broken towards the lower index); returned in ascending order
std::vector<int> dominant_indices(const RVector &energy, double fraction);

// Active rows of the MMV solution on the qM grid. An all-zero solution gives an empty set.
SupportSet estimate_ul_support(const MmvSolution &sol, const ThresholdRule &rule = EnergyCapture{});

// Union of the uplink intervals of every active index, merged
AngularSupport angular_support_from_ul(const SupportSet &s, const ArrayConfig &cfg, int oversampling);

// Downlink DFT indices whose interval meets the angular support
SupportSet dl_support_from_angular(const AngularSupport &xg, const ArrayConfig &cfg);

} // namespace fddprobe

#endif
