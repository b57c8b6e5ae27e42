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

#include "fddprobe/experiment.hpp"

#include "fddprobe/errors.hpp"
#include "fddprobe/geometry_channel.hpp"
#include "fddprobe/mmv_solver.hpp"
#include "fddprobe/probing.hpp"
#include "fddprobe/support_pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <thread>

namespace fddprobe
{

namespace
{

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double db_to_linear(double db)
{
    return std::pow(10.0, db / 10.0);
}

Rng stream(std::uint64_t seed, std::string_view name, std::uint64_t key = 0)
{
    return Rng(derive_seed(seed, name, key));
}

// Everything a trial shares between methods
struct TrialState
{
    ArrayConfig array;
    int grid_points = 0;
    std::optional<AngleInterval> shared;
    std::vector<ScatteringFunction> scattering;
    CMatrix H_dl; // M x K, true downlink channels on the evaluated subcarrier
    CMatrix F;    // M x M DFT basis
    double dl_power = 1.0;

    bool supports_ready = false;
    std::vector<SupportSet> dl_supports;
    std::vector<int> ul_sizes;
    std::vector<int> dl_sizes;
    int common_size = 0;
    int T = 0;

    std::optional<ProbingMatrix> gaussian_phi;
    std::vector<CVector> gaussian_y;
};

void build_supports(const ExperimentConfig &cfg, std::uint64_t seed, TrialState &st)
{
    const int M = cfg.M;
    const double sigma_ul = std::pow(10.0, -cfg.ul_snr_db / 20.0);
    const CMatrix F_over = overcomplete_dft(M, cfg.q);

    Rng sel_rng = stream(seed, "ul-selection");
    const RMatrix B = antenna_selection_matrix(sel_rng, cfg.m, M);
    const CMatrix G = B.cast<cplx>() * F_over;

    const EnergyCapture rule{cfg.energy_fraction};
    for (int k = 0; k < cfg.K; ++k)
    {
        Rng ch_rng = stream(seed, "ul-channel", static_cast<std::uint64_t>(k));
        const ChannelRealization h_ul =
            sample_channel(ch_rng, st.scattering[static_cast<std::size_t>(k)], st.array, Band::Uplink, cfg.L, st.grid_points, k);
        Rng noise_rng = stream(seed, "ul-noise", static_cast<std::uint64_t>(k));
        CMatrix Y = sketch_uplink(B, h_ul, noise_rng, sigma_ul);

        const MmvSolution sol = solve_mmv(MmvProblem(std::move(Y), G, sigma_ul));
        const SupportSet s_ul = estimate_ul_support(sol, rule);
        const AngularSupport xg = angular_support_from_ul(s_ul, st.array, cfg.q);
        SupportSet s_dl = dl_support_from_angular(xg, st.array);

        st.ul_sizes.push_back(static_cast<int>(s_ul.size()));
        st.dl_sizes.push_back(static_cast<int>(s_dl.size()));
        st.dl_supports.push_back(std::move(s_dl));
    }

    st.common_size = static_cast<int>(intersect(st.dl_supports).size());
    st.T = choose_T(st.dl_supports, cfg.T_override);
    st.supports_ready = true;
}

std::vector<CVector> measure_all(const ExperimentConfig &cfg, std::uint64_t seed, const TrialState &st,
                                 const ProbingMatrix &phi, std::string_view noise_stream)
{
    std::vector<CVector> ys;
    for (int k = 0; k < cfg.K; ++k)
    {
        Rng rng = stream(seed, noise_stream, static_cast<std::uint64_t>(k));
        ys.push_back(measure_downlink(phi, st.H_dl.col(k), rng));
    }
    return ys;
}

EstimatedChannelSet ls_all(const ExperimentConfig &cfg, const TrialState &st, const ProbingMatrix &phi,
                           const std::vector<CVector> &ys)
{
    EstimatedChannelSet est;
    est.method = EstimationMethod::ProposedLS;
    est.H_hat.resize(cfg.M, cfg.K);
    for (int k = 0; k < cfg.K; ++k)
        est.H_hat.col(k) = ls_estimate(ys[static_cast<std::size_t>(k)], phi, st.F, st.dl_supports[static_cast<std::size_t>(k)]).h;
    return est;
}

const ProbingMatrix &gaussian_measurements(const ExperimentConfig &cfg, std::uint64_t seed, TrialState &st)
{
    if (!st.gaussian_phi)
    {
        Rng rng = stream(seed, "probing-gaussian");
        st.gaussian_phi = gaussian_probing(rng, st.T, cfg.M, st.dl_power);
        st.gaussian_y = measure_all(cfg, seed, st, *st.gaussian_phi, "dl-noise-gaussian");
    }
    return *st.gaussian_phi;
}

// Number of DFT coefficients holding `fraction` of the analytic downlink variance
int dominant_count(const ScatteringFunction &sf, const TrialState &st, double fraction)
{
    const RVector var = dft_domain_variance(sf, st.array, Band::Downlink, st.grid_points);
    return static_cast<int>(dominant_indices(var, fraction).size());
}

EstimatedChannelSet estimate(Method method, const ExperimentConfig &cfg, std::uint64_t seed, TrialState &st)
{
    switch (method)
    {
    case Method::ProposedGaussian: {
        const ProbingMatrix &phi = gaussian_measurements(cfg, seed, st);
        return ls_all(cfg, st, phi, st.gaussian_y);
    }
    case Method::ProposedAntennaSel: {
        Rng rng = stream(seed, "probing-antenna");
        const ProbingMatrix phi = antenna_selection_probing(rng, st.T, cfg.M, st.dl_power);
        return ls_all(cfg, st, phi, measure_all(cfg, seed, st, phi, "dl-noise-antenna"));
    }
    case Method::ProposedHybrid: {
        Rng rng = stream(seed, "probing-hybrid");
        const ProbingMatrix phi = hybrid_probing(rng, st.dl_supports, st.T, cfg.M, st.dl_power, st.F);
        return ls_all(cfg, st, phi, measure_all(cfg, seed, st, phi, "dl-noise-hybrid"));
    }
    case Method::JOMP: {
        const ProbingMatrix &phi = gaussian_measurements(cfg, seed, st);
        std::vector<int> s_total;
        for (const auto &sf : st.scattering)
            s_total.push_back(dominant_count(sf, st, cfg.dominant_fraction));
        int s_common = 0;
        if (st.shared)
        {
            ScatteringFunction common;
            common.intervals = {*st.shared};
            common.densities = {1.0 / st.shared->length()};
            s_common = dominant_count(common, st, cfg.dominant_fraction);
            s_common = std::min(s_common, *std::min_element(s_total.begin(), s_total.end()));
        }
        return jomp_estimate(st.gaussian_y, phi, st.F, s_total, s_common);
    }
    case Method::FullCSIT: {
        EstimatedChannelSet est;
        est.method = EstimationMethod::FullCSIT;
        est.H_hat = st.H_dl;
        if (!cfg.noiseless_csit)
        {
            const double variance = 1.0 / st.dl_power;
            for (int k = 0; k < cfg.K; ++k)
            {
                Rng rng = stream(seed, "csit-noise", static_cast<std::uint64_t>(k));
                for (int i = 0; i < cfg.M; ++i)
                    est.H_hat(i, k) += rng.complex_normal(variance);
            }
        }
        return est;
    }
    }
    throw ConfigError("unknown method");
}

void fill_failure(TrialResult &r, const std::string &what)
{
    r.failed = true;
    r.error = what;
    r.sum_rate = kNaN;
    r.min_user_rate = kNaN;
    r.mean_est_err = kNaN;
}

} // namespace

std::uint64_t trial_seed(std::uint64_t root_seed, int trial, int sweep_index)
{
    return derive_seed(root_seed, "trial", static_cast<std::uint64_t>(trial), static_cast<std::uint64_t>(sweep_index));
}

std::vector<TrialResult> run_trial(const ExperimentConfig &cfg, std::uint64_t seed, int trial_index)
{
    cfg.validate();

    TrialState st;
    st.array = ArrayConfig::standard(cfg.M, cfg.theta_max, cfg.wavelength_ratio);
    st.grid_points = cfg.quadrature_points();
    st.dl_power = db_to_linear(cfg.dl_snr_db);
    st.F = dft_basis(cfg.M);

    const ScatterSpec spec{cfg.mpc_count, cfg.total_support_fraction};
    if (cfg.common_mpc)
    {
        Rng rng = stream(seed, "common-mpc");
        st.shared = sample_mpc_interval(rng, spec, cfg.theta_max);
    }
    st.H_dl.resize(cfg.M, cfg.K);
    for (int k = 0; k < cfg.K; ++k)
    {
        Rng sf_rng = stream(seed, "scatter", static_cast<std::uint64_t>(k));
        st.scattering.push_back(sample_scattering_function(sf_rng, spec, cfg.theta_max, st.shared));
        Rng dl_rng = stream(seed, "dl-channel", static_cast<std::uint64_t>(k));
        st.H_dl.col(k) = sample_channel(dl_rng, st.scattering.back(), st.array, Band::Downlink, 1, st.grid_points, k).H.col(0);
    }

    std::vector<TrialResult> results;
    for (Method method : cfg.methods)
    {
        TrialResult r;
        r.trial = trial_index;
        r.seed = seed;
        r.method = method;
        try
        {
            if (method != Method::FullCSIT && !st.supports_ready)
                build_supports(cfg, seed, st);
            if (method != Method::FullCSIT)
            {
                r.ul_support_sizes = st.ul_sizes;
                r.dl_support_sizes = st.dl_sizes;
                r.common_support_size = st.common_size;
                r.T = st.T;
            }

            const EstimatedChannelSet est = estimate(method, cfg, seed, st);
            const PrecoderMatrix prec = zf_precoder(est);
            r.sinr = evaluate_sinr(st.H_dl, prec, st.dl_power, cfg.interference);
            const RateResult rr = rates(r.sinr);
            r.rates = rr.per_user;
            r.sum_rate = rr.sum_rate;
            r.min_user_rate = rr.per_user.minCoeff();

            double err_sum = 0.0;
            for (int k = 0; k < cfg.K; ++k)
            {
                const double e = (est.H_hat.col(k) - st.H_dl.col(k)).norm() / st.H_dl.col(k).norm();
                r.est_errors.push_back(e);
                err_sum += e;
            }
            r.mean_est_err = err_sum / cfg.K;
        }
        catch (const std::exception &e)
        {
            fill_failure(r, e.what());
        }
        results.push_back(std::move(r));
    }
    return results;
}

ExperimentConfig apply_sweep_value(const ExperimentConfig &cfg, double value)
{
    ExperimentConfig out = cfg;
    switch (cfg.sweep.axis)
    {
    case SweepAxis::DlSnrDb:
        out.dl_snr_db = value;
        break;
    case SweepAxis::T:
        out.T_override = static_cast<int>(std::lround(value));
        break;
    case SweepAxis::None:
        break;
    }
    return out;
}

const MethodSummary &ResultTable::summary(Method method, std::optional<double> sweep_value) const
{
    for (const auto &s : summaries)
        if (s.method == method && s.sweep_value == sweep_value)
            return s;
    throw ConfigError("no summary for method " + std::string(method_name(method)));
}

ResultTable run_experiment(const ExperimentConfig &cfg, unsigned threads)
{
    cfg.validate();

    std::vector<std::optional<double>> points;
    if (cfg.sweep.active())
        for (double v : cfg.sweep.values)
            points.emplace_back(v);
    else
        points.emplace_back(std::nullopt);

    const int n = cfg.n_trials;
    const auto n_jobs = static_cast<std::size_t>(n) * points.size();
    std::vector<std::vector<TrialResult>> per_job(n_jobs);

    auto run_job = [&](std::size_t job) {
        const auto point = job / static_cast<std::size_t>(n);
        const int trial = static_cast<int>(job % static_cast<std::size_t>(n));
        const ExperimentConfig local = points[point] ? apply_sweep_value(cfg, *points[point]) : cfg;
        auto res = run_trial(local, trial_seed(cfg.seed, trial, static_cast<int>(point)), trial);
        for (auto &r : res)
            r.sweep_value = points[point];
        per_job[job] = std::move(res);
    };

    threads = std::max(1u, threads);
    if (threads == 1)
    {
        for (std::size_t job = 0; job < n_jobs; ++job)
            run_job(job);
    }
    else
    {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t)
            pool.emplace_back([&] {
                for (std::size_t job = next++; job < n_jobs; job = next++)
                    run_job(job);
            });
        for (auto &th : pool)
            th.join();
    }

    ResultTable table;
    for (auto &job : per_job)
        for (auto &r : job)
            table.rows.push_back(std::move(r));

    for (const auto &point : points)
        for (Method method : cfg.methods)
        {
            MethodSummary s;
            s.method = method;
            s.sweep_value = point;
            double sum = 0.0;
            double sum_sq = 0.0;
            for (const auto &r : table.rows)
            {
                if (r.method != method || r.sweep_value != point)
                    continue;
                s.sum_rates.push_back(r.sum_rate);
                if (r.failed)
                {
                    ++s.n_failed;
                    continue;
                }
                ++s.n_ok;
                sum += r.sum_rate;
                sum_sq += r.sum_rate * r.sum_rate;
            }
            if (s.n_ok > 0)
            {
                s.mean_sum_rate = sum / s.n_ok;
                if (s.n_ok > 1)
                {
                    const double var = std::max(0.0, (sum_sq - s.n_ok * s.mean_sum_rate * s.mean_sum_rate) / (s.n_ok - 1));
                    s.std_error = std::sqrt(var / s.n_ok);
                }
            }
            else
            {
                s.mean_sum_rate = kNaN;
                s.std_error = kNaN;
            }
            table.summaries.push_back(std::move(s));
        }
    return table;
}

std::vector<CcdfPoint> ccdf(const std::vector<double> &values, const std::vector<double> &grid)
{
    if (values.empty())
        throw ConfigError("CCDF of an empty sample");
    std::vector<double> sorted = values;
    std::sort(sorted.begin(), sorted.end());
    const auto n = static_cast<double>(sorted.size());

    std::vector<CcdfPoint> out;
    out.reserve(grid.size());
    for (double x : grid)
    {
        const auto greater = sorted.end() - std::upper_bound(sorted.begin(), sorted.end(), x);
        out.push_back({x, static_cast<double>(greater) / n});
    }
    return out;
}

std::vector<double> default_ccdf_grid(const std::vector<double> &values, int points)
{
    if (values.empty())
        throw ConfigError("CCDF of an empty sample");
    const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
    const double lo = *lo_it - 1.0;
    const double hi = *hi_it;
    points = std::max(points, 2);
    std::vector<double> grid(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i)
        grid[static_cast<std::size_t>(i)] = lo + (hi - lo) * static_cast<double>(i) / (points - 1);
    grid.back() = hi;
    return grid;
}

} // namespace fddprobe
