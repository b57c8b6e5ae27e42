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
#include "fddprobe/results_io.hpp"

#include "fddprobe/errors.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

namespace fddprobe
{

namespace
{

std::string fmt(double v)
{
    if (std::isnan(v))
        return "nan";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

std::vector<std::string> split_csv(const std::string &line)
{
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ','))
        out.push_back(field);
    if (!line.empty() && line.back() == ',')
        out.emplace_back();
    return out;
}

double parse_double(const std::string &s, int line_no)
{
    if (s == "nan")
        return std::nan("");
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size())
        throw ConfigError("results line " + std::to_string(line_no) + ": bad number '" + s + "'");
    return v;
}

int parse_int(const std::string &s, int line_no)
{
    int v = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size())
        throw ConfigError("results line " + std::to_string(line_no) + ": bad integer '" + s + "'");
    return v;
}

} // namespace

void write_results_csv(std::ostream &out, const ResultTable &table)
{
    out << kResultsHeader << '\n';
    for (const auto &r : table.rows)
    {
        out << r.trial << ',' << method_name(r.method) << ',' << (r.sweep_value ? fmt(*r.sweep_value) : "") << ','
            << fmt(r.sum_rate) << ',' << fmt(r.min_user_rate) << ',' << fmt(r.mean_est_err) << ',' << r.T << ','
            << r.common_support_size << '\n';
    }
}

void write_results_csv(const std::string &path, const ResultTable &table)
{
    std::ofstream out(path);
    if (!out)
        throw ConfigError("cannot write '" + path + "'");
    write_results_csv(out, table);
}

void write_summary(std::ostream &out, const ResultTable &table)
{
    for (const auto &s : table.summaries)
    {
        out << method_name(s.method);
        if (s.sweep_value)
            out << " @ " << fmt(*s.sweep_value);
        out << ": mean sum rate " << fmt(s.mean_sum_rate) << " bit/s/Hz (+/- " << fmt(s.std_error) << "), " << s.n_ok
            << " trials";
        if (s.n_failed > 0)
            out << ", " << s.n_failed << " failed";
        out << '\n';
    }
}

std::vector<ResultRecord> read_results_csv(std::istream &in)
{
    std::string line;
    if (!std::getline(in, line) || line != kResultsHeader)
        throw ConfigError("results file does not start with the expected header");

    std::vector<ResultRecord> records;
    int line_no = 1;
    while (std::getline(in, line))
    {
        ++line_no;
        if (line.empty())
            continue;
        const auto f = split_csv(line);
        if (f.size() != 8)
            throw ConfigError("results line " + std::to_string(line_no) + ": expected 8 fields");
        ResultRecord r;
        r.trial = parse_int(f[0], line_no);
        r.method = parse_method(f[1]);
        if (!f[2].empty())
            r.sweep_value = parse_double(f[2], line_no);
        r.sum_rate = parse_double(f[3], line_no);
        r.min_user_rate = parse_double(f[4], line_no);
        r.mean_est_err = parse_double(f[5], line_no);
        r.T = parse_int(f[6], line_no);
        r.common_support_size = parse_int(f[7], line_no);
        records.push_back(r);
    }
    return records;
}

std::vector<ResultRecord> read_results_csv(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open '" + path + "'");
    return read_results_csv(in);
}

void write_ccdf_csv(std::ostream &out, const std::vector<CcdfPoint> &curve)
{
    out << "x,ccdf\n";
    for (const auto &p : curve)
        out << fmt(p.x) << ',' << fmt(p.ccdf) << '\n';
}

std::vector<std::string> write_ccdf_files(const std::string &prefix, const std::vector<ResultRecord> &records,
                                          int grid_points)
{
    std::map<Method, std::vector<double>> by_method;
    for (const auto &r : records)
        if (!std::isnan(r.sum_rate))
            by_method[r.method].push_back(r.sum_rate);

    std::vector<std::string> paths;
    for (const auto &[method, values] : by_method)
    {
        const std::string path = prefix + "." + std::string(method_name(method)) + ".csv";
        std::ofstream out(path);
        if (!out)
            throw ConfigError("cannot write '" + path + "'");
        write_ccdf_csv(out, ccdf(values, default_ccdf_grid(values, grid_points)));
        paths.push_back(path);
    }
    return paths;
}

} // namespace fddprobe
