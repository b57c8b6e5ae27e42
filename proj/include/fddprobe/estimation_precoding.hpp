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

#ifndef FDDPROBE_ESTIMATION_PRECODING_HPP
#define FDDPROBE_ESTIMATION_PRECODING_HPP

#include "fddprobe/linalg.hpp"
#include "fddprobe/probing.hpp"
#include "fddprobe/support_pipeline.hpp"

#include <vector>

namespace fddprobe
{

enum class EstimationMethod
{
    ProposedLS,
    JOMP,
    FullCSIT
};

// Estimated downlink channels in the antenna domain, one column per user
struct EstimatedChannelSet
{
    CMatrix H_hat; // M x K
    EstimationMethod method = EstimationMethod::ProposedLS;
};

struct LsEstimate
{
    CVector h;                   // antenna domain, F * (zero-padded coefficients)
    CVector coefficients;        // on the support, in support order
    bool empty_support = false;  // nothing to estimate; h is zero
    bool underdetermined = false; // T < |s|, minimum-norm solution
};

// Support-aware least squares: x = (Phi F_s)^+ y placed on s, returned as F x
LsEstimate ls_estimate(const CVector &y, const ProbingMatrix &phi, const CMatrix &F, const SupportSet &s);

// Greedy multi-user recovery on the M-point DFT dictionary A = Phi F.
// Stage one picks `s_common` atoms jointly, maximizing the sum over users of
// the squared normalized correlation with the residuals; stage two runs
// per-user OMP for s_total[k] - s_common further atoms; each user is then
// refit by least squares on its selected atoms.
EstimatedChannelSet jomp_estimate(const std::vector<CVector> &measurements, const ProbingMatrix &phi, const CMatrix &F,
                                  const std::vector<int> &s_total, int s_common);

EstimatedChannelSet jomp_estimate(const std::vector<CVector> &measurements, const ProbingMatrix &phi, const CMatrix &F,
                                  int s_total, int s_common);

// Unit-norm-column zero-forcing precoder
struct PrecoderMatrix
{
    CMatrix T_mat; // M x K
};

// Condition number above which an estimated channel matrix is treated as singular
inline constexpr double kMaxZfConditionNumber = 1e12;

// Q = (H_hat^H)^+ before normalization; exposed for the identity check H_hat^H Q = I
CMatrix zf_unnormalized(const EstimatedChannelSet &est);

PrecoderMatrix zf_precoder(const EstimatedChannelSet &est);

enum class InterferenceForm
{
    AtUser,        // sum_{j != i} |h_i^H T_j|^2 : power of the other streams received by user i
    PrintedLiteral // sum_{j != i} |h_j^H T_j|^2 : the other users' own signal powers
};

// SINR_i = (P/K)|h_i^H T_i|^2 / (1 + (P/K) * interference_i)
RVector evaluate_sinr(const CMatrix &H_true, const PrecoderMatrix &prec, double total_power,
                      InterferenceForm form = InterferenceForm::AtUser);

struct RateResult
{
    RVector per_user;
    double sum_rate = 0.0;
};

// R_i = log2(1 + SINR_i)
RateResult rates(const RVector &sinr);

} // namespace fddprobe

#endif
