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

#ifndef FDDPROBE_GEOMETRY_CHANNEL_HPP
#define FDDPROBE_GEOMETRY_CHANNEL_HPP

#include "fddprobe/linalg.hpp"
#include "fddprobe/rng.hpp"

#include <optional>
#include <vector>

namespace fddprobe
{

enum class Band
{
    Uplink,
    Downlink
};

// Closed angular interval [lo, hi] in radians
struct AngleInterval
{
    double lo = 0.0;
    double hi = 0.0;

    double length() const { return hi - lo; }
    bool contains(double theta) const { return theta >= lo && theta <= hi; }
};

// Uniform linear array seen from the base station.
//
// Antenna i sits at distance i*d from the reference element. The spacing is
// stored in uplink wavelengths; the downlink spacing follows from the ratio
// of the two carrier wavelengths. The scanned angular range is
// [-theta_max, theta_max).
struct ArrayConfig
{
    int antennas = 256;              // M
    double spacing_ul = 0.0;         // d / lambda_ul
    double wavelength_ratio = 1.1;   // lambda_ul / lambda_dl
    double theta_max = 1.0471975512; // pi/3

    // Spacing d / lambda_ul = 1 / (2 sin theta_max), so that the uplink phase
    // progression d/lambda_ul * sin(theta) stays inside [-1/2, 1/2]
    static ArrayConfig standard(int antennas, double theta_max, double wavelength_ratio);

    double spacing(Band band) const { return band == Band::Uplink ? spacing_ul : spacing_ul * wavelength_ratio; }

    void validate() const;
};

// Piecewise-constant angular power density gamma(theta)
struct ScatteringFunction
{
    std::vector<AngleInterval> intervals; // sorted, pairwise disjoint
    std::vector<double> densities;        // one positive value per interval

    double total_power() const;      // integral of gamma over the range
    double support_length() const;   // |X_gamma|
    double density_at(double theta) const;
};

// How scattering functions are drawn for a user
struct ScatterSpec
{
    int mpc_count = 2;                         // intervals per user, including the shared one
    double total_support_fraction = 1.0 / 8.0; // |X_gamma| as a fraction of 2*theta_max
};

// Length of a single MPC interval under the given spec
double mpc_interval_length(const ScatterSpec &spec, double theta_max);

// Place one MPC interval uniformly inside the range
AngleInterval sample_mpc_interval(Rng &rng, const ScatterSpec &spec, double theta_max);

// Draw a normalized scattering function. A shared interval, when given, is
// included verbatim and counts towards mpc_count; the remaining intervals are
// placed uniformly and resampled until they do not overlap.
ScatteringFunction sample_scattering_function(Rng &rng, const ScatterSpec &spec, double theta_max,
                                              const std::optional<AngleInterval> &shared = std::nullopt);

// Quadrature of a scattering function: angles and weights gamma(theta_g) * dtheta_g
struct ScatterGrid
{
    std::vector<double> angles;
    std::vector<double> weights;
};

// Number of quadrature nodes used to realize the angular integral
int default_grid_points(int antennas, int oversampling);

// Midpoint rule with grid_points nodes spread over the intervals proportionally to length
ScatterGrid discretize(const ScatteringFunction &sf, int grid_points);

struct ChannelRealization
{
    int user_id = 0;
    Band band = Band::Uplink;
    CMatrix H; // M x L, one column per subcarrier
};

CVector ul_array_response(const ArrayConfig &cfg, double theta);
CVector dl_array_response(const ArrayConfig &cfg, double theta);
CVector array_response(const ArrayConfig &cfg, Band band, double theta);

// Unitary DFT, [F]_{k,l} = exp(j 2pi/M k (l - M/2)) / sqrt(M)
CMatrix dft_basis(int M);

// Overcomplete dictionary, [F~]_{k,l} = exp(j 2pi/(qM) k (l - qM/2)) / sqrt(M), size M x qM
CMatrix overcomplete_dft(int M, int q);

// h = sum_g rho_g a(theta_g), rho_g ~ CN(0, gamma(theta_g) dtheta_g), independently per subcarrier
ChannelRealization sample_channel(Rng &rng, const ScatteringFunction &sf, const ArrayConfig &cfg, Band band, int subcarriers,
                                  int grid_points, int user_id = 0);

// R = sum_g gamma(theta_g) dtheta_g a(theta_g) a(theta_g)^H on the same quadrature sample_channel uses
CMatrix analytic_covariance(const ScatteringFunction &sf, const ArrayConfig &cfg, Band band, int grid_points);

// Variance of each DFT-domain coefficient, E|[F^H h]_i|^2, through the Dirichlet kernel
RVector dft_domain_variance(const ScatteringFunction &sf, const ArrayConfig &cfg, Band band, int grid_points);

// |D_M(psi)|^2 = sin^2(pi psi M) / sin^2(pi psi), with the limit M^2 at integer psi
double dirichlet_squared(double psi, int M);

// Angles whose kernel offset to grid point `index` is within 1/M:
// { theta in range : dist(spacing * sin(theta) - index/grid_size + 1/2, Z) <= 1/M }.
// The kernel is 1-periodic in its argument, so the set can be empty, a single
// interval or two intervals touching the ends of the range.
std::vector<AngleInterval> angular_interval(const ArrayConfig &cfg, Band band, int grid_size, int index);

} // namespace fddprobe

#endif
