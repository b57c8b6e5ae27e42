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

#ifndef FDDPROBE_LINALG_HPP
#define FDDPROBE_LINALG_HPP

#include <complex>
#include <span>

#include <Eigen/Dense>

namespace fddprobe
{

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

// Singular values below this fraction of the largest one are treated as zero
inline constexpr double kPinvRelativeTolerance = 1e-10;

// Moore-Penrose pseudo-inverse through the SVD
CMatrix pseudo_inverse(const CMatrix &A, double relative_tolerance = kPinvRelativeTolerance);

// Ratio of largest to smallest singular value (infinity for rank-deficient or empty input)
double condition_number(const CMatrix &A);

// Columns of A whose indices are listed (in the given order)
CMatrix select_columns(const CMatrix &A, std::span<const int> columns);

// Rows of A whose indices are listed (in the given order)
CMatrix select_rows(const CMatrix &A, std::span<const int> rows);

// Euclidean norm of every row
RVector row_norms(const CMatrix &X);

} // namespace fddprobe

#endif
