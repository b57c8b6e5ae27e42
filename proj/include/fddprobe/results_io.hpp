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
#ifndef FDDPROBE_RESULTS_IO_HPP
#define FDDPROBE_RESULTS_IO_HPP

#include "fddprobe/experiment.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace fddprobe
{

// Per-trial CSV columns
inline constexpr const char *kResultsHeader = "trial,method,sweep_value,sum_rate,min_user_rate,mean_est_err,T,s_common_size";

void write_results_csv(std::ostream &out, const ResultTable &table);
void write_results_csv(const std::string &path, const ResultTable &table);

// Per-method, per-sweep-point means
void write_summary(std::ostream &out, const ResultTable &table);

// One row of a results CSV
struct ResultRecord
{
    int trial = 0;
    Method method = Method::FullCSIT;
    std::optional<double> sweep_value;
    double sum_rate = 0.0;
    double min_user_rate = 0.0;
    double mean_est_err = 0.0;
    int T = 0;
    int common_support_size = 0;
};

std::vector<ResultRecord> read_results_csv(std::istream &in);
std::vector<ResultRecord> read_results_csv(const std::string &path);

void write_ccdf_csv(std::ostream &out, const std::vector<CcdfPoint> &curve);

// Writes <prefix>.<Method>.csv for every method present in `records`
// (failed trials are skipped); returns the paths written
std::vector<std::string> write_ccdf_files(const std::string &prefix, const std::vector<ResultRecord> &records,
                                          int grid_points);

} // namespace fddprobe

#endif
