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

#ifndef FDDPROBE_EXPERIMENT_HPP
#define FDDPROBE_EXPERIMENT_HPP

#include "fddprobe/experiment_config.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace fddprobe
{

struct TrialResult
{
    int trial = 0;
    std::uint64_t seed = 0;
    Method method = Method::FullCSIT;
    std::optional<double> sweep_value;

    RVector sinr;
    RVector rates;
    double sum_rate = 0.0;
    double min_user_rate = 0.0;

    std::vector<int> ul_support_sizes; // |S_ul| per user (qM grid)
    std::vector<int> dl_support_sizes; // |S_dl| per user
    int common_support_size = 0;       // |S_c|
    int T = 0;                         // probing beams = feedback scalars per user per subcarrier

    std::vector<double> est_errors; // ||h_hat - h|| / ||h|| per user
    double mean_est_err = 0.0;

    // Set when the method threw; numeric fields are NaN and `error` holds the message
    bool failed = false;
    std::string error;
};

// Seed of trial `trial` at sweep point `sweep_index`
std::uint64_t trial_seed(std::uint64_t root_seed, int trial, int sweep_index);

// One Monte-Carlo trial, one result per configured method (in configuration order).
// All randomness is drawn from named sub-streams of trial_seed, so the numbers
// of one method do not depend on which other methods are enabled.
std::vector<TrialResult> run_trial(const ExperimentConfig &cfg, std::uint64_t trial_seed, int trial_index = 0);

struct MethodSummary
{
    Method method = Method::FullCSIT;
    std::optional<double> sweep_value;
    int n_ok = 0;
    int n_failed = 0;
    double mean_sum_rate = 0.0;
    double std_error = 0.0;
    std::vector<double> sum_rates; // per trial, in trial order (NaN for failures)
};

struct ResultTable
{
    std::vector<TrialResult> rows; // ordered by sweep point, then trial, then method
    std::vector<MethodSummary> summaries;

    const MethodSummary &summary(Method method, std::optional<double> sweep_value = std::nullopt) const;
};

// Runs every trial (for every sweep point). Trials may execute on several
// threads; the table is assembled in trial order regardless.
ResultTable run_experiment(const ExperimentConfig &cfg, unsigned threads = 1);

// Configuration with one sweep value applied
ExperimentConfig apply_sweep_value(const ExperimentConfig &cfg, double value);

struct CcdfPoint
{
    double x = 0.0;
    double ccdf = 0.0; // fraction of values strictly greater than x
};

std::vector<CcdfPoint> ccdf(const std::vector<double> &values, const std::vector<double> &grid);

// Evenly spaced grid from min(values) - 1 to max(values)
std::vector<double> default_ccdf_grid(const std::vector<double> &values, int points);

} // namespace fddprobe

#endif
