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

#ifndef FDDPROBE_EXPERIMENT_CONFIG_HPP
#define FDDPROBE_EXPERIMENT_CONFIG_HPP

#include "fddprobe/estimation_precoding.hpp"

#include <cstdint>
#include <iosfwd>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fddprobe
{

enum class Method
{
    ProposedGaussian,
    ProposedAntennaSel,
    ProposedHybrid,
    JOMP,
    FullCSIT
};

inline constexpr Method kAllMethods[] = {Method::ProposedGaussian, Method::ProposedAntennaSel, Method::ProposedHybrid,
                                         Method::JOMP, Method::FullCSIT};

std::string_view method_name(Method m);
Method parse_method(std::string_view name);

enum class SweepAxis
{
    None,
    DlSnrDb,
    T
};

struct Sweep
{
    SweepAxis axis = SweepAxis::None;
    std::vector<double> values;

    bool active() const { return axis != SweepAxis::None && !values.empty(); }
};

// One experiment. Defaults are the full-scale system parameters
// (M = 256, m = 64, K = 20, L = 10, q = 2, 2 theta_max = 2pi/3,
// lambda_ul / lambda_dl = 1.1, UL 15 dB, DL 20 dB, T = 80).
struct ExperimentConfig
{
    int M = 256;
    int m = 64;
    int K = 20;
    int L = 10;
    int q = 2;
    double theta_max = std::numbers::pi / 3.0;
    double wavelength_ratio = 1.1;
    double ul_snr_db = 15.0;
    double dl_snr_db = 20.0;
    std::optional<int> T_override = 80;
    int n_trials = 2000;
    std::uint64_t seed = 1;
    std::vector<Method> methods{std::begin(kAllMethods), std::end(kAllMethods)};
    bool common_mpc = true;
    int mpc_count = 2;
    double total_support_fraction = 1.0 / 8.0;
    Sweep sweep;

    // Knobs beyond the system parameters
    bool noiseless_csit = false;         // FullCSIT uses the true channel instead of a noisy copy
    double energy_fraction = 0.99;       // uplink support threshold (energy capture)
    double dominant_fraction = 0.99;     // genie sparsity handed to J-OMP
    InterferenceForm interference = InterferenceForm::AtUser;
    int grid_points = 0;                 // angular quadrature nodes; 0 = max(512, 8 q M)

    bool has_method(Method m) const;
    int quadrature_points() const;
    void validate() const;
};

enum class Scale
{
    Desk,
    Paper
};

Scale parse_scale(std::string_view name);

// Desk scale: M = 64, m = 16, K = 8, L = 10, q = 2, T = 20, 200 trials
ExperimentConfig desk_config();
ExperimentConfig paper_config();
ExperimentConfig config_for_scale(Scale scale);

// Flat `key = value` text, `#` starts a comment; keys are the ExperimentConfig
// field names. Values override those of `base`.
ExperimentConfig parse_config(std::istream &in, ExperimentConfig base);
ExperimentConfig load_config(const std::string &path, ExperimentConfig base);

// Parses "dl_snr_db:0,10,20" or "T:10,20,40"
Sweep parse_sweep(std::string_view text);

} // namespace fddprobe

#endif
