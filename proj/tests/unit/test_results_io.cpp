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

#include <doctest.h>

#include "fddprobe/errors.hpp"
#include "fddprobe/results_io.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace fddprobe;

namespace
{

TrialResult row(int trial, Method method, std::optional<double> sweep, double sum_rate, int T = 20, int common = 3)
{
    TrialResult r;
    r.trial = trial;
    r.method = method;
    r.sweep_value = sweep;
    r.sum_rate = sum_rate;
    r.min_user_rate = sum_rate / 10.0;
    r.mean_est_err = 0.125;
    r.T = T;
    r.common_support_size = common;
    return r;
}

std::string csv_of(const ResultTable &table)
{
    std::ostringstream out;
    write_results_csv(out, table);
    return out.str();
}

std::vector<ResultRecord> parse(const std::string &text)
{
    std::istringstream in(text);
    return read_results_csv(in);
}

std::filesystem::path scratch_dir(const std::string &name)
{
    const auto dir = std::filesystem::temp_directory_path() / ("fddprobe_" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

} // namespace

TEST_CASE("results CSV layout")
{
    ResultTable table;
    table.rows.push_back(row(0, Method::ProposedHybrid, std::nullopt, 1.0 / 3.0));
    table.rows.push_back(row(0, Method::FullCSIT, std::nullopt, 40.0, 0, 0));
    const std::string text = csv_of(table);
    CHECK(text ==
          "trial,method,sweep_value,sum_rate,min_user_rate,mean_est_err,T,s_common_size\n"
          "0,ProposedHybrid,,0.333333333,0.0333333333,0.125,20,3\n"
          "0,FullCSIT,,40,4,0.125,0,0\n");
}

TEST_CASE("results CSV round trip")
{
    ResultTable table;
    Rng rng(4);
    for (int trial = 0; trial < 20; ++trial)
        for (Method m : kAllMethods)
            table.rows.push_back(row(trial, m, trial % 2 ? std::optional<double>(7.5) : std::nullopt,
                                     rng.uniform(0.0, 80.0), 1 + static_cast<int>(rng.uniform_index(60)),
                                     static_cast<int>(rng.uniform_index(10))));
    table.rows[3].sum_rate = std::nan("");
    table.rows[3].min_user_rate = std::nan("");

    const auto records = parse(csv_of(table));
    REQUIRE(records.size() == table.rows.size());
    for (std::size_t i = 0; i < records.size(); ++i)
    {
        const TrialResult &w = table.rows[i];
        const ResultRecord &r = records[i];
        CHECK(r.trial == w.trial);
        CHECK(r.method == w.method);
        CHECK(r.sweep_value == w.sweep_value);
        CHECK(r.T == w.T);
        CHECK(r.common_support_size == w.common_support_size);
        if (std::isnan(w.sum_rate))
        {
            CHECK(std::isnan(r.sum_rate));
            CHECK(std::isnan(r.min_user_rate));
            continue;
        }
        // Nine significant digits
        CHECK(std::abs(r.sum_rate - w.sum_rate) <= 5e-9 * std::abs(w.sum_rate));
        CHECK(std::abs(r.min_user_rate - w.min_user_rate) <= 5e-9 * std::abs(w.min_user_rate));
    }

    // Writing what was read reproduces the text
    ResultTable again;
    for (const auto &r : records)
    {
        TrialResult t = row(r.trial, r.method, r.sweep_value, r.sum_rate, r.T, r.common_support_size);
        t.min_user_rate = r.min_user_rate;
        t.mean_est_err = r.mean_est_err;
        again.rows.push_back(t);
    }
    CHECK(csv_of(again) == csv_of(table));
}

TEST_CASE("malformed results files are rejected")
{
    const std::string header = std::string(kResultsHeader) + "\n";
    CHECK_THROWS_AS(parse(""), ConfigError);
    CHECK_THROWS_AS(parse("trial,method\n"), ConfigError);
    CHECK_THROWS_AS(parse(header + "0,JOMP,,1,2,3,4\n"), ConfigError);
    CHECK_THROWS_AS(parse(header + "0,JOMP,,1,2,3,4,5,6\n"), ConfigError);
    CHECK_THROWS_AS(parse(header + "x,JOMP,,1,2,3,4,5\n"), ConfigError);
    CHECK_THROWS_AS(parse(header + "0,Nobody,,1,2,3,4,5\n"), ConfigError);
    CHECK_THROWS_AS(parse(header + "0,JOMP,,1.5.2,2,3,4,5\n"), ConfigError);
    CHECK(parse(header + "\n").empty());
    CHECK_THROWS_AS(read_results_csv(std::string("/nonexistent/results.csv")), ConfigError);
}

TEST_CASE("summary lines")
{
    ResultTable table;
    MethodSummary s;
    s.method = Method::JOMP;
    s.n_ok = 9;
    s.n_failed = 1;
    s.mean_sum_rate = 12.5;
    s.std_error = 0.25;
    table.summaries.push_back(s);
    s.method = Method::FullCSIT;
    s.sweep_value = 30.0;
    s.n_failed = 0;
    table.summaries.push_back(s);
    std::ostringstream out;
    write_summary(out, table);
    CHECK(out.str() == "JOMP: mean sum rate 12.5 bit/s/Hz (+/- 0.25), 9 trials, 1 failed\n"
                       "FullCSIT @ 30: mean sum rate 12.5 bit/s/Hz (+/- 0.25), 9 trials\n");
}

TEST_CASE("CCDF files per method")
{
    const auto dir = scratch_dir("ccdf");
    std::vector<ResultRecord> records;
    for (int trial = 0; trial < 4; ++trial)
    {
        ResultRecord a;
        a.trial = trial;
        a.method = Method::ProposedGaussian;
        a.sum_rate = 10.0 + trial;
        records.push_back(a);
        ResultRecord b = a;
        b.method = Method::JOMP;
        b.sum_rate = trial == 2 ? std::nan("") : 5.0;
        records.push_back(b);
    }
    const auto paths = write_ccdf_files((dir / "out").string(), records, 5);
    REQUIRE(paths.size() == 2u);
    CHECK(paths[0] == (dir / "out.ProposedGaussian.csv").string());
    CHECK(paths[1] == (dir / "out.JOMP.csv").string());

    std::ifstream gauss(paths[0]);
    std::stringstream gauss_text;
    gauss_text << gauss.rdbuf();
    // Grid from min - 1 = 9 to max = 13 in five points
    CHECK(gauss_text.str() == "x,ccdf\n9,1\n10,0.75\n11,0.5\n12,0.25\n13,0\n");

    std::ifstream jomp(paths[1]);
    std::string line;
    std::getline(jomp, line);
    CHECK(line == "x,ccdf");
    std::getline(jomp, line);
    CHECK(line == "4,1");
    std::filesystem::remove_all(dir);
}
