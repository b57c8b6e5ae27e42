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

#include "fddprobe/estimation_precoding.hpp"

#include "fddprobe/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace fddprobe
{

LsEstimate ls_estimate(const CVector &y, const ProbingMatrix &phi, const CMatrix &F, const SupportSet &s)
{
    const Eigen::Index M = phi.phi.cols();
    if (y.size() != phi.phi.rows())
        throw StructuralError("measurement length does not match the number of probing beams");
    if (F.rows() != M || F.cols() != M)
        throw StructuralError("LS estimate needs the M x M DFT basis");
    if (s.grid() != SupportGrid::Downlink || s.grid_size() != M)
        throw StructuralError("LS estimate needs a downlink support on the M grid");

    LsEstimate est;
    est.h = CVector::Zero(M);
    if (s.empty())
    {
        est.empty_support = true;
        return est;
    }

    const CMatrix F_s = select_columns(F, s.indices());
    const CMatrix A = phi.phi * F_s;
    est.underdetermined = A.rows() < A.cols();
    est.coefficients = pseudo_inverse(A) * y;
    est.h = F_s * est.coefficients;
    return est;
}

namespace
{

// Index of the largest score outside `taken`; -1 when every score is zero
int best_atom(const RVector &score, const std::vector<int> &taken)
{
    int best = -1;
    double best_score = 0.0;
    for (Eigen::Index j = 0; j < score.size(); ++j)
    {
        if (std::find(taken.begin(), taken.end(), static_cast<int>(j)) != taken.end())
            continue;
        if (score(j) > best_score)
        {
            best_score = score(j);
            best = static_cast<int>(j);
        }
    }
    return best;
}

CVector project_out(const CMatrix &A, const std::vector<int> &atoms, const CVector &y)
{
    if (atoms.empty())
        return y;
    const CMatrix A_s = select_columns(A, atoms);
    return y - A_s * (pseudo_inverse(A_s) * y);
}

} // namespace

EstimatedChannelSet jomp_estimate(const std::vector<CVector> &measurements, const ProbingMatrix &phi, const CMatrix &F,
                                  const std::vector<int> &s_total, int s_common)
{
    const Eigen::Index T = phi.phi.rows();
    const Eigen::Index M = phi.phi.cols();
    const auto K = measurements.size();
    if (F.rows() != M || F.cols() != M)
        throw StructuralError("J-OMP needs the M x M DFT basis");
    if (s_total.size() != K)
        throw StructuralError("J-OMP needs one sparsity level per user");
    for (const auto &y : measurements)
        if (y.size() != T)
            throw StructuralError("measurement length does not match the number of probing beams");
    if (s_common < 0)
        throw ConfigError("common sparsity must be non-negative");

    const CMatrix A = phi.phi * F;
    RVector col_norm_sq = A.colwise().squaredNorm().transpose();
    for (Eigen::Index j = 0; j < M; ++j)
        if (col_norm_sq(j) <= 0.0)
            col_norm_sq(j) = std::numeric_limits<double>::infinity();

    const auto max_atoms = static_cast<int>(std::min(T, M));
    auto residual_tiny = [](const CVector &r, const CVector &y) { return r.norm() <= 1e-12 * std::max(y.norm(), 1e-300); };

    // Stage 1: joint selection of the common atoms
    std::vector<int> common;
    std::vector<CVector> residuals(measurements.begin(), measurements.end());
    const int n_common = std::min(s_common, max_atoms);
    for (int p = 0; p < n_common; ++p)
    {
        RVector score = RVector::Zero(M);
        for (std::size_t k = 0; k < K; ++k)
            score += (A.adjoint() * residuals[k]).cwiseAbs2().cwiseQuotient(col_norm_sq);
        const int j = best_atom(score, common);
        if (j < 0)
            break;
        common.push_back(j);
        for (std::size_t k = 0; k < K; ++k)
            residuals[k] = project_out(A, common, measurements[k]);
    }

    EstimatedChannelSet out;
    out.method = EstimationMethod::JOMP;
    out.H_hat = CMatrix::Zero(M, static_cast<Eigen::Index>(K));

    // Stage 2: per-user greedy completion, then least-squares refit
    for (std::size_t k = 0; k < K; ++k)
    {
        std::vector<int> atoms = common;
        CVector r = residuals[k];
        const int target = std::min(std::max(s_total[k], static_cast<int>(common.size())), max_atoms);
        while (static_cast<int>(atoms.size()) < target && !residual_tiny(r, measurements[k]))
        {
            const RVector score = (A.adjoint() * r).cwiseAbs2().cwiseQuotient(col_norm_sq);
            const int j = best_atom(score, atoms);
            if (j < 0)
                break;
            atoms.push_back(j);
            r = project_out(A, atoms, measurements[k]);
        }
        if (atoms.empty())
            continue;
        const CMatrix A_s = select_columns(A, atoms);
        const CVector x = pseudo_inverse(A_s) * measurements[k];
        out.H_hat.col(static_cast<Eigen::Index>(k)) = select_columns(F, atoms) * x;
    }
    return out;
}

EstimatedChannelSet jomp_estimate(const std::vector<CVector> &measurements, const ProbingMatrix &phi, const CMatrix &F,
                                  int s_total, int s_common)
{
    return jomp_estimate(measurements, phi, F, std::vector<int>(measurements.size(), s_total), s_common);
}

CMatrix zf_unnormalized(const EstimatedChannelSet &est)
{
    const CMatrix &H = est.H_hat;
    if (H.cols() < 1)
        throw StructuralError("zero-forcing needs at least one user");
    if (H.cols() > H.rows())
        throw StructuralError("zero-forcing needs K <= M");
    if (!H.allFinite())
        throw StructuralError("estimated channel contains non-finite entries");

    const double cond = condition_number(H);
    if (!(cond <= kMaxZfConditionNumber))
    {
        std::ostringstream msg;
        msg << "estimated channel matrix is rank deficient (condition number " << cond << " > " << kMaxZfConditionNumber
            << ")";
        throw SingularityError(msg.str(), cond);
    }
    return pseudo_inverse(H.adjoint());
}

PrecoderMatrix zf_precoder(const EstimatedChannelSet &est)
{
    PrecoderMatrix p;
    p.T_mat = zf_unnormalized(est);
    for (Eigen::Index j = 0; j < p.T_mat.cols(); ++j)
        p.T_mat.col(j).normalize();
    return p;
}

RVector evaluate_sinr(const CMatrix &H_true, const PrecoderMatrix &prec, double total_power, InterferenceForm form)
{
    if (H_true.rows() != prec.T_mat.rows() || H_true.cols() != prec.T_mat.cols())
        throw StructuralError("channel and precoder shapes differ");

    const Eigen::Index K = H_true.cols();
    const double per_user = total_power / static_cast<double>(K);
    const RMatrix gain = (H_true.adjoint() * prec.T_mat).cwiseAbs2(); // gain(i, j) = |h_i^H T_j|^2

    RVector sinr(K);
    for (Eigen::Index i = 0; i < K; ++i)
    {
        double interference = 0.0;
        for (Eigen::Index j = 0; j < K; ++j)
        {
            if (j == i)
                continue;
            interference += form == InterferenceForm::AtUser ? gain(i, j) : gain(j, j);
        }
        sinr(i) = per_user * gain(i, i) / (1.0 + per_user * interference);
    }
    return sinr;
}

RateResult rates(const RVector &sinr)
{
    RateResult r;
    r.per_user.resize(sinr.size());
    for (Eigen::Index i = 0; i < sinr.size(); ++i)
    {
        if (!(sinr(i) >= 0.0))
            throw DomainError("SINR must be non-negative");
        r.per_user(i) = std::log2(1.0 + sinr(i));
    }
    r.sum_rate = r.per_user.sum();
    return r;
}

} // namespace fddprobe
