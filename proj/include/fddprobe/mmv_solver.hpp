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

#ifndef FDDPROBE_MMV_SOLVER_HPP
#define FDDPROBE_MMV_SOLVER_HPP

#include "fddprobe/linalg.hpp"

#include <vector>

namespace fddprobe
{

// Joint-sparse recovery from multiple measurement vectors:
//
//   min ||X||_{2,1}  subject to  ||Y - G X||_F <= sqrt(m L) sigma
//
// Y is m x L (one sketch per subcarrier), G is m x qM.
class MmvProblem
{
public:
    MmvProblem(CMatrix Y, CMatrix G, double sigma);

    const CMatrix &Y() const { return Y_; }
    const CMatrix &G() const { return G_; }
    double sigma() const { return sigma_; }
    double fit_budget() const { return fit_budget_; } // sqrt(m L) sigma

    Eigen::Index sketches() const { return Y_.rows(); }     // m
    Eigen::Index subcarriers() const { return Y_.cols(); }  // L
    Eigen::Index dictionary_size() const { return G_.cols(); } // qM

private:
    CMatrix Y_;
    CMatrix G_;
    double sigma_;
    double fit_budget_;
};

struct MmvOptions
{
    int max_bisection_steps = 25;
    int max_inner_iterations = 500;
    double inner_tolerance = 1e-6;     // relative change of X between iterations
    int power_iterations = 50;
    double lambda_floor_ratio = 1e-8;  // lower end of the lambda bracket, relative to max_i ||(G^H Y)_i||
    double band_lower = 0.95;          // accepted residual window, in units of the fit budget
    double band_upper = 1.05;
    bool record_objective = false;     // keep the regularized objective of the final inner solve
};

struct MmvSolution
{
    CMatrix X;               // qM x L
    RVector row_norms;       // ||X_{i,.}||_2
    double residual_norm = 0.0;
    double lambda = 0.0;     // regularization weight of the returned iterate (0 for the least-norm fallback)
    int iterations = 0;      // proximal-gradient iterations over all bisection steps
    // true when the residual landed inside the accepted window around the fit
    // budget (or X = 0 is feasible). false means the budget could not be met:
    // either bisection ran out of steps (closest iterate returned) or even the
    // least-squares fit exceeds it (least-norm fit G^+ Y returned).
    bool converged = false;
    std::vector<double> objective_trace; // filled when MmvOptions::record_objective is set
};

// Row-wise group soft thresholding: row r -> max(0, 1 - tau/||r||) r
CMatrix prox_l21(const CMatrix &X, double tau);

double l21_norm(const CMatrix &X);

// Largest squared singular value of G by power iteration on G^H G
double operator_norm_squared(const CMatrix &G, int iterations);

// Minimizer of 0.5 ||Y - G X||_F^2 + lambda ||X||_{2,1} by monotone accelerated
// proximal gradient, started from X0
struct RegularizedFit
{
    CMatrix X;
    int iterations = 0;
    std::vector<double> objective_trace;
};

RegularizedFit solve_regularized(const CMatrix &Y, const CMatrix &G, double lambda, const CMatrix &X0, double lipschitz,
                                 const MmvOptions &opts);

// Constrained program through the discrepancy principle: lambda is bisected
// (geometrically) until the residual of the regularized minimizer lies inside
// [band_lower, band_upper] * fit_budget.
MmvSolution solve_mmv(const MmvProblem &problem, const MmvOptions &opts = {});

} // namespace fddprobe

#endif
