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
#include <doctest.h>

#include "fddprobe/linalg.hpp"
#include "fddprobe/rng.hpp"

#include <Eigen/Cholesky>

#include <vector>

using namespace fddprobe;

namespace
{

CMatrix random_matrix(Rng &rng, Eigen::Index rows, Eigen::Index cols)
{
    CMatrix A(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < cols; ++j)
            A(i, j) = rng.complex_normal();
    return A;
}

} // namespace

TEST_CASE("pseudo-inverse of a tall full-rank matrix matches the normal equations")
{
    Rng rng(1);
    for (int trial = 0; trial < 20; ++trial)
    {
        const CMatrix A = random_matrix(rng, 9, 4);
        // (A^H A)^{-1} A^H through a Cholesky solve
        const CMatrix oracle = (A.adjoint() * A).llt().solve(A.adjoint());
        CHECK((pseudo_inverse(A) - oracle).norm() < 1e-10 * oracle.norm());
    }
}

TEST_CASE("pseudo-inverse satisfies the Penrose conditions on rank-deficient input")
{
    Rng rng(2);
    const CMatrix A = random_matrix(rng, 6, 2) * random_matrix(rng, 2, 5); // rank 2
    const CMatrix P = pseudo_inverse(A);
    CHECK((A * P * A - A).norm() < 1e-10 * A.norm());
    CHECK((P * A * P - P).norm() < 1e-10 * P.norm());
    CHECK(((A * P).adjoint() - A * P).norm() < 1e-10);
    CHECK(((P * A).adjoint() - P * A).norm() < 1e-10);
}

TEST_CASE("singular values below the relative tolerance are dropped")
{
    CMatrix A = CMatrix::Zero(2, 2);
    A(0, 0) = 1.0;
    A(1, 1) = 1e-12;
    const CMatrix P = pseudo_inverse(A);
    CHECK(std::abs(P(0, 0) - 1.0) < 1e-14);
    CHECK(std::abs(P(1, 1)) == 0.0);

    A(1, 1) = 1e-8;
    CHECK(std::abs(pseudo_inverse(A)(1, 1) - 1e8) < 1e-2);
}

TEST_CASE("pseudo-inverse of the zero matrix is zero")
{
    const CMatrix Z = CMatrix::Zero(3, 2);
    const CMatrix P = pseudo_inverse(Z);
    CHECK(P.rows() == 2);
    CHECK(P.cols() == 3);
    CHECK(P.norm() == 0.0);
}

TEST_CASE("condition number")
{
    CMatrix A = CMatrix::Zero(3, 2);
    A(0, 0) = 2.0;
    A(1, 1) = 1e-3;
    CHECK(condition_number(A) == doctest::Approx(2000.0).epsilon(1e-12));

    CMatrix B = CMatrix::Zero(2, 2);
    B(0, 0) = 1.0;
    CHECK(std::isinf(condition_number(B)));
}

TEST_CASE("column and row selection")
{
    CMatrix A(2, 4);
    A << 1, 2, 3, 4, 5, 6, 7, 8;
    const std::vector<int> cols{3, 1};
    const CMatrix S = select_columns(A, cols);
    CHECK(S.cols() == 2);
    CHECK(S(0, 0) == cplx(4));
    CHECK(S(1, 1) == cplx(6));

    const std::vector<int> rows{1};
    const CMatrix R = select_rows(A, rows);
    CHECK(R.rows() == 1);
    CHECK(R(0, 2) == cplx(7));
}

TEST_CASE("row norms")
{
    CMatrix X(2, 2);
    X << cplx(3, 4), 0, cplx(0, 1), cplx(1, 0);
    const RVector n = row_norms(X);
    CHECK(n(0) == doctest::Approx(5.0));
    CHECK(n(1) == doctest::Approx(std::sqrt(2.0)));
}
