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

#include "fddprobe/experiment_config.hpp"

#include "fddprobe/errors.hpp"
#include "fddprobe/geometry_channel.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <limits>
#include <istream>
#include <sstream>

namespace fddprobe
{

namespace
{

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep)
{
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true)
    {
        const auto pos = s.find(sep, start);
        parts.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
        if (pos == std::string_view::npos)
            break;
        start = pos + 1;
    }
    return parts;
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value)
{
    throw ConfigError("invalid value '" + std::string(value) + "' for key '" + std::string(key) + "'");
}

double to_double(std::string_view key, std::string_view value)
{
    // strtod accepts what from_chars does and more ("inf", hex floats); keep it strict
    double out = 0.0;
    const auto *end = value.data() + value.size();
    const auto res = std::from_chars(value.data(), end, out);
    if (res.ec != std::errc() || res.ptr != end)
        bad_value(key, value);
    return out;
}

long long to_integer(std::string_view key, std::string_view value)
{
    long long out = 0;
    const auto *end = value.data() + value.size();
    const auto res = std::from_chars(value.data(), end, out);
    if (res.ec != std::errc() || res.ptr != end)
        bad_value(key, value);
    return out;
}

int to_int(std::string_view key, std::string_view value)
{
    const long long v = to_integer(key, value);
    if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max())
        bad_value(key, value);
    return static_cast<int>(v);
}

bool to_bool(std::string_view key, std::string_view value)
{
    if (value == "true" || value == "1" || value == "yes" || value == "on")
        return true;
    if (value == "false" || value == "0" || value == "no" || value == "off")
        return false;
    bad_value(key, value);
}

} // namespace

std::string_view method_name(Method m)
{
    switch (m)
    {
    case Method::ProposedGaussian:
        return "ProposedGaussian";
    case Method::ProposedAntennaSel:
        return "ProposedAntennaSel";
    case Method::ProposedHybrid:
        return "ProposedHybrid";
    case Method::JOMP:
        return "JOMP";
    case Method::FullCSIT:
        return "FullCSIT";
    }
    return "unknown";
}

Method parse_method(std::string_view name)
{
    for (Method m : kAllMethods)
        if (method_name(m) == name)
            return m;
    throw ConfigError("unknown method '" + std::string(name) + "'");
}

bool ExperimentConfig::has_method(Method m) const
{
    return std::find(methods.begin(), methods.end(), m) != methods.end();
}

int ExperimentConfig::quadrature_points() const
{
    return grid_points > 0 ? grid_points : default_grid_points(M, q);
}

void ExperimentConfig::validate() const
{
    if (M < 1 || m < 1 || K < 1 || L < 1 || q < 1)
        throw ConfigError("M, m, K, L and q must be positive");
    if (m > M)
        throw ConfigError("m must not exceed M");
    if (K > M)
        throw ConfigError("K must not exceed M for zero-forcing");
    if (!(theta_max > 0.0 && theta_max <= std::numbers::pi / 2.0))
        throw ConfigError("theta_max must lie in (0, pi/2]");
    if (!(wavelength_ratio > 0.0))
        throw ConfigError("wavelength_ratio must be positive");
    if (T_override && *T_override < 1)
        throw ConfigError("T_override must be positive");
    if (n_trials < 1)
        throw ConfigError("n_trials must be positive");
    if (methods.empty())
        throw ConfigError("at least one method is required");
    if (mpc_count < 1)
        throw ConfigError("mpc_count must be positive");
    if (!(total_support_fraction > 0.0 && total_support_fraction <= 1.0))
        throw ConfigError("total_support_fraction must lie in (0, 1]");
    if (!(energy_fraction > 0.0 && energy_fraction <= 1.0))
        throw ConfigError("energy_fraction must lie in (0, 1]");
    if (!(dominant_fraction > 0.0 && dominant_fraction <= 1.0))
        throw ConfigError("dominant_fraction must lie in (0, 1]");
    if (grid_points < 0)
        throw ConfigError("grid_points must be non-negative");
    if (sweep.axis == SweepAxis::T)
        for (double v : sweep.values)
            if (v < 1.0 || v != static_cast<double>(static_cast<long long>(v)))
                throw ConfigError("T sweep values must be positive integers");
}

Scale parse_scale(std::string_view name)
{
    if (name == "desk")
        return Scale::Desk;
    if (name == "paper")
        return Scale::Paper;
    throw ConfigError("unknown scale '" + std::string(name) + "' (expected desk or paper)");
}

ExperimentConfig desk_config()
{
    ExperimentConfig cfg;
    cfg.M = 64;
    cfg.m = 16;
    cfg.K = 8;
    cfg.L = 10;
    cfg.q = 2;
    cfg.T_override = 20;
    cfg.n_trials = 200;
    return cfg;
}

ExperimentConfig paper_config()
{
    return ExperimentConfig{};
}

ExperimentConfig config_for_scale(Scale scale)
{
    return scale == Scale::Desk ? desk_config() : paper_config();
}

Sweep parse_sweep(std::string_view text)
{
    text = trim(text);
    Sweep sweep;
    if (text.empty() || text == "none")
        return sweep;

    const auto colon = text.find(':');
    if (colon == std::string_view::npos)
        bad_value("sweep", text);
    const auto axis = trim(text.substr(0, colon));
    if (axis == "dl_snr_db")
        sweep.axis = SweepAxis::DlSnrDb;
    else if (axis == "T")
        sweep.axis = SweepAxis::T;
    else
        bad_value("sweep", text);

    for (auto part : split(text.substr(colon + 1), ','))
        sweep.values.push_back(to_double("sweep", part));
    if (sweep.values.empty())
        bad_value("sweep", text);
    return sweep;
}

ExperimentConfig parse_config(std::istream &in, ExperimentConfig cfg)
{
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw))
    {
        ++line_no;
        std::string_view line = raw;
        if (const auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;

        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError("config line " + std::to_string(line_no) + ": expected 'key = value'");
        const auto key = trim(line.substr(0, eq));
        const auto value = trim(line.substr(eq + 1));

        if (key == "M")
            cfg.M = to_int(key, value);
        else if (key == "m")
            cfg.m = to_int(key, value);
        else if (key == "K")
            cfg.K = to_int(key, value);
        else if (key == "L")
            cfg.L = to_int(key, value);
        else if (key == "q")
            cfg.q = to_int(key, value);
        else if (key == "theta_max")
            cfg.theta_max = to_double(key, value);
        else if (key == "wavelength_ratio")
            cfg.wavelength_ratio = to_double(key, value);
        else if (key == "ul_snr_db")
            cfg.ul_snr_db = to_double(key, value);
        else if (key == "dl_snr_db")
            cfg.dl_snr_db = to_double(key, value);
        else if (key == "T_override")
        {
            if (value == "none" || value.empty())
                cfg.T_override.reset();
            else
                cfg.T_override = to_int(key, value);
        }
        else if (key == "n_trials")
            cfg.n_trials = to_int(key, value);
        else if (key == "seed")
        {
            const long long s = to_integer(key, value);
            if (s < 0)
                bad_value(key, value);
            cfg.seed = static_cast<std::uint64_t>(s);
        }
        else if (key == "methods")
        {
            cfg.methods.clear();
            for (auto name : split(value, ','))
                if (!name.empty())
                    cfg.methods.push_back(parse_method(name));
        }
        else if (key == "common_mpc")
            cfg.common_mpc = to_bool(key, value);
        else if (key == "mpc_count")
            cfg.mpc_count = to_int(key, value);
        else if (key == "total_support_fraction")
            cfg.total_support_fraction = to_double(key, value);
        else if (key == "sweep")
            cfg.sweep = parse_sweep(value);
        else if (key == "noiseless_csit")
            cfg.noiseless_csit = to_bool(key, value);
        else if (key == "energy_fraction")
            cfg.energy_fraction = to_double(key, value);
        else if (key == "dominant_fraction")
            cfg.dominant_fraction = to_double(key, value);
        else if (key == "interference")
        {
            if (value == "at_user")
                cfg.interference = InterferenceForm::AtUser;
            else if (value == "printed")
                cfg.interference = InterferenceForm::PrintedLiteral;
            else
                bad_value(key, value);
        }
        else if (key == "grid_points")
            cfg.grid_points = to_int(key, value);
        else
            throw ConfigError("config line " + std::to_string(line_no) + ": unknown key '" + std::string(key) + "'");
    }
    cfg.validate();
    return cfg;
}

ExperimentConfig load_config(const std::string &path, ExperimentConfig base)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config file '" + path + "'");
    return parse_config(in, std::move(base));
}

} // namespace fddprobe
