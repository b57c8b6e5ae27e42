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

#include "fddprobe/mmv_solver.hpp"

#include "fddprobe/errors.hpp"

#include <cmath>
#include <limits>
#include <optional>

namespace fddprobe
{

MmvProblem::MmvProblem(CMatrix Y, CMatrix G, double sigma)
    : Y_(std::move(Y)), G_(std::move(G)), sigma_(sigma)
{
    if (Y_.rows() != G_.rows())
        throw StructuralError("MMV problem: Y has " + std::to_string(Y_.rows()) + " rows but G has " +
                              std::to_string(G_.rows()));
    if (Y_.rows() == 0 || Y_.cols() == 0 || G_.cols() == 0)
        throw StructuralError("MMV problem: empty measurement or dictionary");
    if (G_.rows() > G_.cols())
        throw StructuralError("MMV problem: more sketches than dictionary atoms (m > qM)");
    if (!(sigma_ >= 0.0))
        throw ConfigError("MMV problem: noise level must be non-negative");
    fit_budget_ = std::sqrt(static_cast<double>(Y_.rows() * Y_.cols())) * sigma_;
}

CMatrix prox_l21(const CMatrix &X, double tau)
{
    CMatrix out = X;
    if (tau <= 0.0)
        return out;
    for (Eigen::Index r = 0; r < X.rows(); ++r)
    {
        const double n = X.row(r).norm();
        if (n <= tau)
            out.row(r).setZero();
        else
            out.row(r) *= (1.0 - tau / n);
    }
    return out;
}

double l21_norm(const CMatrix &X)
{
    return X.rowwise().norm().sum();
}

double operator_norm_squared(const CMatrix &G, int iterations)
{
    // Deterministic, non-degenerate start vector
    CVector v(G.cols());
    for (Eigen::Index i = 0; i < v.size(); ++i)
        v(i) = cplx(1.0 + 0.01 * static_cast<double>(i % 7), 0.003 * static_cast<double>(i % 5));
    v.normalize();

    double estimate = 0.0;
    for (int it = 0; it < iterations; ++it)
    {
        CVector w = G.adjoint() * (G * v);
        const double n = w.norm();
        if (n == 0.0)
            return 0.0;
        estimate = n;
        v = w / n;
    }
    // Rayleigh quotient of the final vector is a lower bound; the norm ratio an upper estimate
    return std::max(estimate, (G * v).squaredNorm());
}

RegularizedFit solve_regularized(const CMatrix &Y, const CMatrix &G, double lambda, const CMatrix &X0, double lipschitz,
                                 const MmvOptions &opts)
{
    const double step = 1.0 / lipschitz;
    const double tau = step * lambda;
    auto objective = [&](const CMatrix &GX, const CMatrix &X) {
        return 0.5 * (Y - GX).squaredNorm() + lambda * l21_norm(X);
    };

    // Monotone FISTA: the accepted iterate x never increases the objective,
    // momentum is built from the raw proximal point z.
    CMatrix x = X0;
    CMatrix Gx = G * x;
    double fx = objective(Gx, x);
    CMatrix x_prev = x;
    CMatrix Gx_prev = Gx;
    CMatrix y = x;
    CMatrix Gy = Gx;
    CMatrix z(x.rows(), x.cols());
    CMatrix Gz(Gx.rows(), Gx.cols());
    CMatrix resid(Gx.rows(), Gx.cols());
    double t = 1.0;

    RegularizedFit fit;
    if (opts.record_objective)
        fit.objective_trace.push_back(fx);

    int it = 0;
    for (; it < opts.max_inner_iterations; ++it)
    {
        resid = Gy - Y;
        z = y;
        z.noalias() -= step * (G.adjoint() * resid);
        for (Eigen::Index r = 0; r < z.rows(); ++r)
        {
            const double n = z.row(r).norm();
            if (n <= tau)
                z.row(r).setZero();
            else
                z.row(r) *= (1.0 - tau / n);
        }
        Gz.noalias() = G * z;
        const double fz = objective(Gz, z);

        x_prev.swap(x);
        Gx_prev.swap(Gx);
        const bool take_z = fz <= fx;
        // Momentum restart when the objective stalls or the step opposes the momentum
        if (!take_z || (y - z).cwiseProduct(z.conjugate() - x_prev.conjugate()).sum().real() > 0.0)
            t = 1.0;
        const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
        if (take_z)
        {
            x = z;
            Gx = Gz;
            fx = fz;
        }
        else
        {
            x = x_prev;
            Gx = Gx_prev;
        }
        const double a = t / t_next;
        const double b = (t - 1.0) / t_next;
        y = x + a * (z - x) + b * (x - x_prev);
        Gy = Gx + a * (Gz - Gx) + b * (Gx - Gx_prev);
        t = t_next;

        if (opts.record_objective)
            fit.objective_trace.push_back(fx);

        // A rejected proximal step leaves x unchanged without being a fixed point
        if (!take_z)
            continue;
        const double x_norm = x.norm();
        if (x_norm == 0.0 && x_prev.norm() == 0.0)
        {
            ++it;
            break;
        }
        if ((x - x_prev).norm() <= opts.inner_tolerance * std::max(x_norm, std::numeric_limits<double>::min()))
        {
            ++it;
            break;
        }
    }

    fit.X = std::move(x);
    fit.iterations = it;
    return fit;
}

MmvSolution solve_mmv(const MmvProblem &problem, const MmvOptions &opts)
{
    const CMatrix &Y = problem.Y();
    const CMatrix &G = problem.G();
    const double budget = problem.fit_budget();

    MmvSolution sol;
    const double y_norm = Y.norm();
    auto finish = [&](CMatrix X, double lambda, bool converged) {
        sol.X = std::move(X);
        sol.row_norms = row_norms(sol.X);
        sol.residual_norm = (Y - G * sol.X).norm();
        sol.lambda = lambda;
        sol.converged = converged;
        return sol;
    };

    const CMatrix GhY = G.adjoint() * Y;
    const double lambda_max = GhY.rowwise().norm().maxCoeff();
    if (y_norm <= budget)
        return finish(CMatrix::Zero(G.cols(), Y.cols()), lambda_max, true);

    const double lipschitz = operator_norm_squared(G, opts.power_iterations);
    if (!(lipschitz > 0.0) || !(lambda_max > 0.0))
        return finish(CMatrix::Zero(G.cols(), Y.cols()), 0.0, false);

    const double lower = opts.band_lower * budget;
    const double upper = opts.band_upper * budget;
    const double log_target = std::log(budget);

    // Bracketing search on log(lambda) against log(residual). The residual is
    // monotone in lambda; lambda_max is an exact evaluation (X = 0, residual
    // ||Y||). Proposals come from regula falsi with the Illinois modification
    // and fall back to the geometric midpoint when they crowd a bracket end.
    double log_lo = std::log(opts.lambda_floor_ratio * lambda_max);
    double log_hi = std::log(lambda_max);
    double f_hi = std::log(y_norm) - log_target; // > 0
    std::optional<double> f_lo;
    int retained_side = 0; // +1 when the last step kept hi, -1 when it kept lo

    CMatrix warm = CMatrix::Zero(G.cols(), Y.cols());
    CMatrix best;
    double best_lambda = 0.0;
    double best_gap = std::numeric_limits<double>::infinity();

    for (int step = 0; step < opts.max_bisection_steps; ++step)
    {
        const double width = log_hi - log_lo;
        double log_lambda = 0.0;
        if (f_lo)
            log_lambda = log_hi - f_hi * width / (f_hi - *f_lo);
        else // residual roughly proportional to lambda; descend at most a decade per step
            log_lambda = std::max(log_hi - f_hi, log_hi - std::log(10.0));
        const double margin = f_lo ? 0.01 * width : 0.0;
        if (!(log_lambda > log_lo + margin && log_lambda < log_hi - margin))
            log_lambda = 0.5 * (log_lo + log_hi);

        const double lambda = std::exp(log_lambda);
        RegularizedFit fit = solve_regularized(Y, G, lambda, warm, lipschitz, opts);
        sol.iterations += fit.iterations;
        const double residual = (Y - G * fit.X).norm();
        const double f = std::log(std::max(residual, std::numeric_limits<double>::min())) - log_target;

        if (std::abs(f) < best_gap)
        {
            best_gap = std::abs(f);
            best = fit.X;
            best_lambda = lambda;
        }

        if (residual >= lower && residual <= upper)
        {
            sol.objective_trace = std::move(fit.objective_trace);
            return finish(std::move(fit.X), lambda, true);
        }
        if (f < 0.0)
        {
            log_lo = log_lambda;
            f_lo = f;
            if (retained_side == 1)
                f_hi *= 0.5;
            retained_side = 1;
        }
        else
        {
            log_hi = log_lambda;
            f_hi = f;
            if (retained_side == -1 && f_lo)
                *f_lo *= 0.5;
            retained_side = -1;
        }
        warm = std::move(fit.X);
    }

    // Budget missed. If even the least-squares fit cannot reach it the noise
    // level is inconsistent with the data: hand back the least-norm fit.
    const CMatrix least_norm = pseudo_inverse(G) * Y;
    if ((Y - G * least_norm).norm() > upper)
        return finish(least_norm, 0.0, false);
    return finish(std::move(best), best_lambda, false);
}

} // namespace fddprobe
