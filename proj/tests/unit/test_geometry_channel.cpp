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

#include "fddprobe/errors.hpp"
#include "fddprobe/geometry_channel.hpp"

#include <cmath>
#include <numbers>

using namespace fddprobe;
using std::numbers::pi;

namespace
{

const cplx I1(0.0, 1.0);

ArrayConfig table_array(int M)
{
    return ArrayConfig::standard(M, pi / 3.0, 1.1);
}

double wrap_phase(double a)
{
    return std::remainder(a, 2.0 * pi);
}

// |sum_k exp(j 2 pi psi k)|^2 by direct summation
double dirichlet_by_sum(double psi, int M)
{
    cplx s = 0.0;
    for (int k = 0; k < M; ++k)
        s += std::exp(I1 * (2.0 * pi * psi * k));
    return std::norm(s);
}

} // namespace

TEST_CASE("array response at broadside is all ones")
{
    const ArrayConfig cfg = table_array(4);
    const CVector a = ul_array_response(cfg, 0.0);
    for (Eigen::Index i = 0; i < 4; ++i)
        CHECK(std::abs(a(i) - 1.0) < 1e-15);
    const CVector b = dl_array_response(cfg, 0.0);
    for (Eigen::Index i = 0; i < 4; ++i)
        CHECK(std::abs(b(i) - 1.0) < 1e-15);
}

TEST_CASE("half-wavelength array approaches [1, -1] at endfire")
{
    const ArrayConfig cfg = ArrayConfig::standard(2, pi / 2.0, 1.0);
    CHECK(cfg.spacing_ul == doctest::Approx(0.5));
    const CVector a = ul_array_response(cfg, pi / 2.0 - 1e-9);
    CHECK(std::abs(a(0) - 1.0) == 0.0);
    CHECK(std::abs(a(1) + 1.0) < 1e-8);
}

TEST_CASE("array response phase matches direct evaluation")
{
    const ArrayConfig cfg = table_array(256);
    const CVector a = ul_array_response(cfg, 0.3);
    const double expected = 2.0 * pi * std::sin(0.3) / (2.0 * std::sin(pi / 3.0));
    CHECK(wrap_phase(std::arg(a(1)) - expected) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(std::abs(a(0) - 1.0) == 0.0);
    for (Eigen::Index i = 0; i < 256; i += 37)
        CHECK(std::abs(a(i) - std::exp(I1 * (expected * static_cast<double>(i)))) < 1e-10);
}

TEST_CASE("downlink phases scale with the wavelength ratio")
{
    ArrayConfig cfg = ArrayConfig::standard(8, pi / 3.0, 1.1);
    const CVector ul = ul_array_response(cfg, 0.2);
    const CVector dl = dl_array_response(cfg, 0.2);
    const double ul_step = 2.0 * pi * cfg.spacing_ul * std::sin(0.2);
    for (Eigen::Index i = 0; i < 8; ++i)
    {
        CHECK(std::abs(ul(i) - std::exp(I1 * (ul_step * static_cast<double>(i)))) < 1e-12);
        CHECK(std::abs(dl(i) - std::exp(I1 * (1.1 * ul_step * static_cast<double>(i)))) < 1e-12);
    }

    cfg.wavelength_ratio = 1.0;
    for (double theta : {-1.0, -0.3, 0.0, 0.45, 1.0})
        CHECK((ul_array_response(cfg, theta) - dl_array_response(cfg, theta)).norm() == 0.0);
}

TEST_CASE("angles outside the scanned range are rejected")
{
    const ArrayConfig cfg = table_array(8);
    CHECK_THROWS_AS(ul_array_response(cfg, pi / 3.0), DomainError);
    CHECK_THROWS_AS(dl_array_response(cfg, -pi / 3.0 - 1e-6), DomainError);
    CHECK_NOTHROW(ul_array_response(cfg, -pi / 3.0));
}

TEST_CASE("DFT basis is unitary")
{
    for (int M : {1, 2, 4, 64, 256})
    {
        const CMatrix F = dft_basis(M);
        CHECK((F.adjoint() * F - CMatrix::Identity(M, M)).norm() < 1e-12);
    }
    CHECK(std::abs(dft_basis(1)(0, 0) - 1.0) < 1e-15);
}

TEST_CASE("DFT basis entry")
{
    const CMatrix F = dft_basis(8);
    const cplx expected = std::exp(I1 * (pi / 2.0 * (5.0 - 4.0))) / std::sqrt(8.0);
    CHECK(std::abs(F(2, 5) - expected) < 1e-14);
}

TEST_CASE("overcomplete dictionary")
{
    CHECK((overcomplete_dft(16, 1) - dft_basis(16)).norm() < 1e-12);

    const CMatrix Ft = overcomplete_dft(4, 2);
    CHECK(Ft.rows() == 4);
    CHECK(Ft.cols() == 8);
    for (Eigen::Index l = 0; l < 8; ++l)
        CHECK(Ft.col(l).norm() == doctest::Approx(1.0).epsilon(1e-14));

    for (int q : {2, 3})
    {
        const int M = 12;
        const CMatrix F = dft_basis(M);
        const CMatrix G = overcomplete_dft(M, q);
        for (int l = 0; l < M; ++l)
            CHECK((G.col(q * l) - F.col(l)).norm() < 1e-12);
    }
}

TEST_CASE("scattering function covering the whole range")
{
    Rng rng(1);
    const ScatterSpec spec{1, 1.0};
    const ScatteringFunction sf = sample_scattering_function(rng, spec, pi / 3.0);
    REQUIRE(sf.intervals.size() == 1);
    CHECK(sf.intervals[0].lo == doctest::Approx(-pi / 3.0));
    CHECK(sf.intervals[0].hi == doctest::Approx(pi / 3.0));
    CHECK(sf.densities[0] == doctest::Approx(1.0 / (2.0 * pi / 3.0)));
}

TEST_CASE("default scattering functions are normalized, disjoint and inside the range")
{
    const double theta_max = pi / 3.0;
    for (std::uint64_t seed = 0; seed < 200; ++seed)
    {
        Rng rng(seed);
        const ScatteringFunction sf = sample_scattering_function(rng, ScatterSpec{}, theta_max);
        REQUIRE(sf.intervals.size() == 2);
        CHECK(std::abs(sf.total_power() - 1.0) < 1e-12);
        CHECK(sf.support_length() == doctest::Approx(2.0 * theta_max / 8.0).epsilon(1e-12));
        CHECK(sf.intervals[0].hi < sf.intervals[1].lo);
        CHECK(sf.intervals.front().lo >= -theta_max);
        CHECK(sf.intervals.back().hi < theta_max);
        CHECK(sf.densities[0] == sf.densities[1]);
    }
}

TEST_CASE("scattering function draw is reproducible and keeps the shared interval")
{
    Rng a(17);
    Rng b(17);
    const auto sa = sample_scattering_function(a, ScatterSpec{}, pi / 3.0);
    const auto sb = sample_scattering_function(b, ScatterSpec{}, pi / 3.0);
    for (std::size_t k = 0; k < sa.intervals.size(); ++k)
    {
        CHECK(sa.intervals[k].lo == sb.intervals[k].lo);
        CHECK(sa.intervals[k].hi == sb.intervals[k].hi);
    }

    Rng rng(4);
    const AngleInterval shared = sample_mpc_interval(rng, ScatterSpec{}, pi / 3.0);
    for (int user = 0; user < 20; ++user)
    {
        const auto sf = sample_scattering_function(rng, ScatterSpec{}, pi / 3.0, shared);
        bool found = false;
        for (const auto &iv : sf.intervals)
            found = found || (iv.lo == shared.lo && iv.hi == shared.hi);
        CHECK(found);
    }
}

TEST_CASE("infeasible scatter specs are rejected")
{
    Rng rng(1);
    CHECK_THROWS_AS(sample_scattering_function(rng, ScatterSpec{2, 1.5}, pi / 3.0), ConfigError);
    CHECK_THROWS_AS(sample_scattering_function(rng, ScatterSpec{0, 0.1}, pi / 3.0), ConfigError);
}

TEST_CASE("point-like scatterer gives a rank-one channel")
{
    const ArrayConfig cfg = table_array(32);
    ScatteringFunction sf;
    sf.intervals = {{0.4, 0.4 + 1e-6}};
    sf.densities = {1e6};
    Rng rng(8);
    const ChannelRealization h = sample_channel(rng, sf, cfg, Band::Uplink, 1, 512);
    const double mag0 = std::abs(h.H(0, 0));
    for (Eigen::Index i = 0; i < 32; ++i)
        CHECK(std::abs(std::abs(h.H(i, 0)) - mag0) < 1e-3 * mag0);
}

TEST_CASE("sample covariance converges to the analytic covariance")
{
    const int M = 32;
    const ArrayConfig cfg = ArrayConfig::standard(M, pi / 3.0, 1.1);
    Rng rng(21);
    const ScatteringFunction sf = sample_scattering_function(rng, ScatterSpec{}, cfg.theta_max);
    const int grid = default_grid_points(M, 2);

    for (Band band : {Band::Uplink, Band::Downlink})
    {
        const CMatrix R = analytic_covariance(sf, cfg, band, grid);
        CHECK(std::abs(R.trace() - static_cast<double>(M)) < 1e-9);

        const int N = 20000;
        const ChannelRealization h = sample_channel(rng, sf, cfg, band, N, grid);
        const CMatrix S = h.H * h.H.adjoint() / static_cast<double>(N);
        CHECK((S - R).norm() / R.norm() < 0.05);
    }
}

TEST_CASE("uplink and downlink realizations are uncorrelated")
{
    const int M = 16;
    const ArrayConfig cfg = ArrayConfig::standard(M, pi / 3.0, 1.1);
    Rng rng(5);
    const ScatteringFunction sf = sample_scattering_function(rng, ScatterSpec{}, cfg.theta_max);
    const int N = 20000;
    const ChannelRealization ul = sample_channel(rng, sf, cfg, Band::Uplink, N, 512);
    const ChannelRealization dl = sample_channel(rng, sf, cfg, Band::Downlink, N, 512);
    for (Eigen::Index i = 0; i < M; i += 5)
    {
        const cplx corr = (ul.H.row(i).array() * dl.H.row(i).array().conjugate()).mean();
        CHECK(std::abs(corr) < 0.05);
    }
}

TEST_CASE("Dirichlet kernel")
{
    CHECK(dirichlet_squared(0.0, 16) == doctest::Approx(256.0));
    CHECK(dirichlet_squared(3.0, 16) == doctest::Approx(256.0));
    for (double psi : {0.013, 0.1, 0.25, 0.4999, -0.31, 0.0625})
        CHECK(dirichlet_squared(psi, 16) == doctest::Approx(dirichlet_by_sum(psi, 16)).epsilon(1e-9));
}

TEST_CASE("DFT-domain variance equals the diagonal of F^H R F")
{
    const int M = 32;
    const ArrayConfig cfg = ArrayConfig::standard(M, pi / 3.0, 1.1);
    Rng rng(13);
    const ScatteringFunction sf = sample_scattering_function(rng, ScatterSpec{}, cfg.theta_max);
    const CMatrix F = dft_basis(M);
    for (Band band : {Band::Uplink, Band::Downlink})
    {
        const CMatrix R = analytic_covariance(sf, cfg, band, 1024);
        const RVector oracle = (F.adjoint() * R * F).diagonal().real();
        const RVector v = dft_domain_variance(sf, cfg, band, 1024);
        CHECK((v - oracle).norm() < 1e-9 * oracle.norm());
        CHECK(v.sum() == doctest::Approx(static_cast<double>(M)).epsilon(1e-10));
    }
}

TEST_CASE("a point scatterer concentrates its energy on the covering indices")
{
    const int M = 64;
    const ArrayConfig cfg = ArrayConfig::standard(M, pi / 3.0, 1.1);
    for (double theta0 : {-0.9, -0.2, 0.05, 0.37, 0.8})
    {
        ScatteringFunction sf;
        sf.intervals = {{theta0, theta0 + 1e-7}};
        sf.densities = {1e7};
        const RVector v = dft_domain_variance(sf, cfg, Band::Uplink, 64);

        double covered = 0.0;
        for (int i = 0; i < M; ++i)
        {
            bool near = false;
            for (int d = -1; d <= 1; ++d)
            {
                const int j = (i + d + M) % M;
                for (const auto &iv : angular_interval(cfg, Band::Uplink, M, j))
                    near = near || iv.contains(theta0);
            }
            if (near)
                covered += v(i);
        }
        CHECK(covered / v.sum() > 0.8);

        // Monte-Carlo check of the analytic variance profile
        Rng rng(static_cast<std::uint64_t>(1000 * (theta0 + 1.0)));
        const ChannelRealization h = sample_channel(rng, sf, cfg, Band::Uplink, 20000, 64);
        const RVector empirical = (dft_basis(M).adjoint() * h.H).rowwise().squaredNorm() / 20000.0;
        CHECK((empirical - v).norm() / v.norm() < 0.05);
    }
}

TEST_CASE("interval centre sits where the kernel offset vanishes")
{
    const int M = 64;
    const ArrayConfig cfg = ArrayConfig::standard(M, pi / 3.0, 1.1);
    for (int i : {20, 32, 40})
    {
        const double theta0 = std::asin((static_cast<double>(i) / M - 0.5) / cfg.spacing_ul);
        const auto pieces = angular_interval(cfg, Band::Uplink, M, i);
        REQUIRE(pieces.size() == 1);
        // Midpoint in sin(theta)
        const double mid = 0.5 * (std::sin(pieces[0].lo) + std::sin(pieces[0].hi));
        CHECK(mid == doctest::Approx(std::sin(theta0)).epsilon(1e-12));
        CHECK(pieces[0].contains(theta0));
    }
}

TEST_CASE("interval lengths follow the closed form")
{
    const int M = 256;
    const ArrayConfig cfg = table_array(M);
    const double inv_spacing = 1.0 / cfg.spacing_ul;
    for (int i = 2; i <= M - 2; ++i)
    {
        const double closed = std::abs(std::asin(inv_spacing * ((i + 1.0) / M - 0.5)) -
                                       std::asin(inv_spacing * ((i - 1.0) / M - 0.5)));
        const auto pieces = angular_interval(cfg, Band::Uplink, M, i);
        REQUIRE(pieces.size() == 1);
        CHECK(std::abs(pieces[0].length() - closed) < 1e-10);
    }
}

TEST_CASE("uplink intervals cover the scanned range")
{
    for (int M : {16, 64, 256})
    {
        const ArrayConfig cfg = table_array(M);
        std::vector<AngleInterval> all;
        for (int i = 0; i < M; ++i)
            for (const auto &iv : angular_interval(cfg, Band::Uplink, M, i))
                all.push_back(iv);

        const int n = 100000;
        int uncovered = 0;
        for (int g = 0; g < n; ++g)
        {
            const double theta = -cfg.theta_max + 2.0 * cfg.theta_max * g / n;
            bool hit = false;
            for (const auto &iv : all)
                if (iv.contains(theta))
                {
                    hit = true;
                    break;
                }
            uncovered += hit ? 0 : 1;
        }
        CHECK(uncovered == 0);
    }
}

TEST_CASE("downlink intervals near the range ends wrap around")
{
    const int M = 64;
    const ArrayConfig cfg = table_array(M);
    bool split = false;
    for (int i = 0; i < M; ++i)
    {
        const auto pieces = angular_interval(cfg, Band::Downlink, M, i);
        CHECK(pieces.size() <= 2);
        for (const auto &iv : pieces)
        {
            CHECK(iv.lo >= -cfg.theta_max);
            CHECK(iv.hi <= cfg.theta_max);
            CHECK(iv.lo <= iv.hi);
        }
        split = split || pieces.size() == 2;
    }
    CHECK(split);
}

TEST_CASE("interval index out of range")
{
    const ArrayConfig cfg = table_array(16);
    CHECK_THROWS_AS(angular_interval(cfg, Band::Uplink, 16, 16), DomainError);
    CHECK_THROWS_AS(angular_interval(cfg, Band::Uplink, 32, -1), DomainError);
}

TEST_CASE("uplink and downlink covariances share their trace")
{
    const ArrayConfig cfg = table_array(64);
    Rng rng(3);
    const auto sf = sample_scattering_function(rng, ScatterSpec{}, cfg.theta_max);
    const CMatrix R_ul = analytic_covariance(sf, cfg, Band::Uplink, 1024);
    const CMatrix R_dl = analytic_covariance(sf, cfg, Band::Downlink, 1024);
    CHECK(R_ul.trace().real() == doctest::Approx(64.0).epsilon(1e-12));
    CHECK(R_dl.trace().real() == doctest::Approx(64.0).epsilon(1e-12));
}
