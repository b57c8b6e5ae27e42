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

#include "fddprobe/linalg.hpp"

#include <limits>

namespace fddprobe
{

CMatrix pseudo_inverse(const CMatrix &A, double relative_tolerance)
{
    if (A.size() == 0)
        return CMatrix::Zero(A.cols(), A.rows());

    Eigen::JacobiSVD<CMatrix> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const RVector &s = svd.singularValues();
    const double cutoff = relative_tolerance * s(0);

    RVector s_inv = RVector::Zero(s.size());
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s(i) > cutoff)
            s_inv(i) = 1.0 / s(i);

    return svd.matrixV() * s_inv.asDiagonal() * svd.matrixU().adjoint();
}

double condition_number(const CMatrix &A)
{
    if (A.size() == 0)
        return std::numeric_limits<double>::infinity();
    Eigen::JacobiSVD<CMatrix> svd(A);
    const RVector &s = svd.singularValues();
    const double smin = s(s.size() - 1);
    if (smin <= 0.0)
        return std::numeric_limits<double>::infinity();
    return s(0) / smin;
}

CMatrix select_columns(const CMatrix &A, std::span<const int> columns)
{
    CMatrix out(A.rows(), static_cast<Eigen::Index>(columns.size()));
    for (std::size_t j = 0; j < columns.size(); ++j)
        out.col(static_cast<Eigen::Index>(j)) = A.col(columns[j]);
    return out;
}

CMatrix select_rows(const CMatrix &A, std::span<const int> rows)
{
    CMatrix out(static_cast<Eigen::Index>(rows.size()), A.cols());
    for (std::size_t i = 0; i < rows.size(); ++i)
        out.row(static_cast<Eigen::Index>(i)) = A.row(rows[i]);
    return out;
}

RVector row_norms(const CMatrix &X)
{
    return X.rowwise().norm();
}

} // namespace fddprobe
