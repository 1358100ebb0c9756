// SPDX-License-Identifier: Apache-2.0
//
// bpjee: energy-efficient multimode transmission for downlink MIMO
// Copyright (C) 2026 The bpjee authors
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

#ifndef bpjee_channel_H
#define bpjee_channel_H

#include <armadillo>
#include <cstdint>
#include <vector>

namespace bpjee
{
    constexpr double speed_of_light_m_per_s = 2.99792458e8;

    // -174 dBm/Hz expressed in W/Hz
    constexpr double thermal_noise_w_per_hz = 3.9810717055349565e-21;

    // Propagation and radio parameters shared by every user of the cell
    struct Scenario
    {
        std::vector<double> distances_km = {1.0}; // one entry per user, or a single entry shared by all
        double speed_kmh = 3.0;                   // all users move at the same speed
        double carrier_hz = 2e9;
        double delay_s = 1e-3;                    // CSIT delay tau = D * T_s
        double noise_density_w_per_hz = thermal_noise_w_per_hz;
        double w_max_hz = 5e6;
        double pathloss_db_intercept = 128.1;     // PL = intercept + slope * log10(d / km)
        double pathloss_db_slope = 37.6;
        double shadow_multiplier = 1.0;           // fixed shadowing factor applied to the power gain

        void validate() const;

        // Distance of user k; a single configured distance applies to all users
        double distance_km(std::size_t k) const;
    };

    struct DopplerParams
    {
        double rho = 1.0;    // correlation between current and delayed channel
        double eps_sq = 0.0; // per-entry variance of the delay error, 1 - rho^2
    };

    // Second-order statistics of one link, all the transmitter knows besides the delayed channel
    struct LinkStats
    {
        double zeta = 1.0;  // large-scale power gain
        double rho = 1.0;
        double eps_sq = 0.0;
    };

    struct UserLink
    {
        double zeta = 1.0;
        double rho = 1.0;
        double eps_sq = 0.0;
        arma::cx_mat h_delayed; // small-scale channel known at the BS, N x M
        arma::cx_mat h_current; // small-scale channel during transmission, N x M

        LinkStats stats() const { return {zeta, rho, eps_sq}; }
    };

    struct ChannelSet
    {
        std::vector<UserLink> links;
        arma::uword m = 0; // BS antennas
        arma::uword n = 0; // antennas per user
    };

    // Pathloss law in dB converted to a power gain, times the shadowing multiplier
    double large_scale_gain(double d_km, const Scenario &scenario);

    // rho = J0(2 pi f_d tau) with Doppler f_d = v f_c / c
    DopplerParams doppler_params(double speed_kmh, const Scenario &scenario);

    // Draws (delayed, current) channel pairs for `k` users. Delayed channels have i.i.d. CN(0,1)
    // entries, current = rho * delayed + E with E i.i.d. CN(0, 1 - rho^2) independent of delayed.
    // Deterministic in (scenario, m, n, k, seed).
    ChannelSet draw_channel_set(const Scenario &scenario, arma::uword m, arma::uword n, std::size_t k,
                                std::uint64_t seed);

    // Uses one user per configured distance
    ChannelSet draw_channel_set(const Scenario &scenario, arma::uword m, arma::uword n, std::uint64_t seed);

    // Per-trial seed of a Monte Carlo run
    inline std::uint64_t trial_seed(std::uint64_t base, std::uint64_t trial) { return base ^ trial; }
}

#endif
