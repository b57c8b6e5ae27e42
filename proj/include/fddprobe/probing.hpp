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

#ifndef FDDPROBE_PROBING_HPP
#define FDDPROBE_PROBING_HPP

#include "fddprobe/linalg.hpp"
#include "fddprobe/rng.hpp"
#include "fddprobe/support_pipeline.hpp"

#include <optional>
#include <vector>

namespace fddprobe
{

enum class ProbingKind
{
    Gaussian,
    AntennaSelection,
    Hybrid
};

// T probing beams, one per row, each with squared norm `power`
struct ProbingMatrix
{
    CMatrix phi; // T x M
    double power = 1.0;
    ProbingKind kind = ProbingKind::Gaussian;

    int beams() const { return static_cast<int>(phi.rows()); }
};

// Number of probing beams (= complex feedback scalars per user per subcarrier).
// The largest estimated downlink support wins unless an override is given;
// if every support is empty the result falls back to 1 and `fallback` is set.
int choose_T(const std::vector<SupportSet> &supports, std::optional<int> override_T = std::nullopt, bool *fallback = nullptr);

ProbingMatrix gaussian_probing(Rng &rng, int T, int M, double power);

ProbingMatrix antenna_selection_probing(Rng &rng, int T, int M, double power);

// Rows 0..|S_c|-1 are sqrt(power) F_{.,j}^H for j in the common support S_c
// (ascending); the rest are Gaussian. With S_c empty this is the Gaussian design.
ProbingMatrix hybrid_probing(Rng &rng, const std::vector<SupportSet> &supports, int T, int M, double power, const CMatrix &F);

// y = Phi h + n with n ~ CN(0, noise_variance I); noise_variance = 1 is the receiver model
CVector measure_downlink(const ProbingMatrix &phi, const CVector &h_dl, Rng &rng, double noise_variance = 1.0);

} // namespace fddprobe

#endif
