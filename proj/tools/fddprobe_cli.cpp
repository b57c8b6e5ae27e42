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
// Command line front end: run, sweep and ccdf subcommands

#include "fddprobe/errors.hpp"
#include "fddprobe/experiment.hpp"
#include "fddprobe/experiment_config.hpp"
#include "fddprobe/results_io.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>

using namespace fddprobe;

namespace
{

struct CommonOptions
{
    std::string config_path;
    std::string scale = "desk";
    std::optional<std::uint64_t> seed;
    std::optional<int> trials;
    std::string out = "results.csv";
    unsigned threads = 1;
};

void add_common(CLI::App *cmd, CommonOptions &o)
{
    cmd->add_option("--config", o.config_path, "key = value configuration file")->check(CLI::ExistingFile);
    cmd->add_option("--scale", o.scale, "base parameter set")->check(CLI::IsMember({"desk", "paper"}));
    cmd->add_option("--seed", o.seed, "root seed");
    cmd->add_option("--trials", o.trials, "number of Monte-Carlo trials")->check(CLI::PositiveNumber);
    cmd->add_option("--out", o.out, "per-trial results CSV");
    cmd->add_option("--threads", o.threads, "worker threads")->check(CLI::Range(1u, 256u));
}

ExperimentConfig build_config(const CommonOptions &o)
{
    ExperimentConfig cfg = config_for_scale(parse_scale(o.scale));
    if (!o.config_path.empty())
        cfg = load_config(o.config_path, cfg);
    if (o.seed)
        cfg.seed = *o.seed;
    if (o.trials)
        cfg.n_trials = *o.trials;
    cfg.validate();
    return cfg;
}

int run(const ExperimentConfig &cfg, const CommonOptions &o)
{
    const ResultTable table = run_experiment(cfg, o.threads);
    write_results_csv(o.out, table);
    write_summary(std::cout, table);
    std::cout << "wrote " << table.rows.size() << " rows to " << o.out << '\n';
    return 0;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Downlink probing and feedback simulation for FDD massive MIMO"};
    app.require_subcommand(1);

    CommonOptions run_opts;
    auto *run_cmd = app.add_subcommand("run", "Monte-Carlo comparison of all configured methods");
    add_common(run_cmd, run_opts);

    CommonOptions sweep_opts;
    std::string sweep_spec;
    auto *sweep_cmd = app.add_subcommand("sweep", "repeat the experiment over DL SNR or T");
    add_common(sweep_cmd, sweep_opts);
    sweep_cmd->add_option("--sweep", sweep_spec, "dl_snr_db:v1,v2,... or T:v1,v2,...");

    std::string ccdf_in;
    std::string ccdf_prefix = "ccdf";
    int ccdf_points = 200;
    auto *ccdf_cmd = app.add_subcommand("ccdf", "sum-rate CCDF per method from a results CSV");
    ccdf_cmd->add_option("--in", ccdf_in, "results CSV from run or sweep")->required()->check(CLI::ExistingFile);
    ccdf_cmd->add_option("--out", ccdf_prefix, "output prefix; writes <prefix>.<Method>.csv");
    ccdf_cmd->add_option("--grid-points", ccdf_points, "number of evaluation points")->check(CLI::Range(2, 100000));

    CLI11_PARSE(app, argc, argv);

    try
    {
        if (*run_cmd)
        {
            ExperimentConfig cfg = build_config(run_opts);
            cfg.sweep = Sweep{};
            return run(cfg, run_opts);
        }
        if (*sweep_cmd)
        {
            ExperimentConfig cfg = build_config(sweep_opts);
            if (!sweep_spec.empty())
                cfg.sweep = parse_sweep(sweep_spec);
            if (!cfg.sweep.active())
                throw ConfigError("sweep needs --sweep or a sweep key in the config file");
            cfg.validate();
            return run(cfg, sweep_opts);
        }
        if (*ccdf_cmd)
        {
            const auto records = read_results_csv(ccdf_in);
            for (const auto &path : write_ccdf_files(ccdf_prefix, records, ccdf_points))
                std::cout << "wrote " << path << '\n';
            return 0;
        }
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
