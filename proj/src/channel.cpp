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

#include "bpjee/channel.hpp"
#include "bpjee/errors.hpp"
#include "bpjee/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace bpjee
{
    void Scenario::validate() const
    {
        if (distances_km.empty())
            throw domain_error("Scenario: distances_km must not be empty");
        for (double d : distances_km)
            if (!(d > 0.0))
                throw domain_error("Scenario: distances must be positive");
        if (!(speed_kmh >= 0.0))
            throw domain_error("Scenario: speed must be nonnegative");
        if (!(carrier_hz > 0.0))
            throw domain_error("Scenario: carrier frequency must be positive");
        if (!(delay_s >= 0.0))
            throw domain_error("Scenario: CSIT delay must be nonnegative");
        if (!(noise_density_w_per_hz > 0.0))
            throw domain_error("Scenario: noise density must be positive");
        if (!(w_max_hz > 0.0))
            throw domain_error("Scenario: W_max must be positive");
        if (!(shadow_multiplier > 0.0))
            throw domain_error("Scenario: shadow multiplier must be positive");
    }

    double Scenario::distance_km(std::size_t k) const
    {
        if (distances_km.size() == 1)
            return distances_km.front();
        if (k >= distances_km.size())
            throw domain_error("Scenario: no distance configured for user " + std::to_string(k));
        return distances_km[k];
    }

    double large_scale_gain(double d_km, const Scenario &scenario)
    {
        if (!(d_km > 0.0))
            throw domain_error("large_scale_gain: distance must be positive");
        const double pathloss_db = scenario.pathloss_db_intercept + scenario.pathloss_db_slope * std::log10(d_km);
        return scenario.shadow_multiplier * std::pow(10.0, -pathloss_db / 10.0);
    }

    DopplerParams doppler_params(double speed_kmh, const Scenario &scenario)
    {
        const double doppler_hz = speed_kmh / 3.6 * scenario.carrier_hz / speed_of_light_m_per_s;
        const double rho = std::clamp(bessel_j0(2.0 * std::numbers::pi * doppler_hz * scenario.delay_s), -1.0, 1.0);
        return {rho, 1.0 - rho * rho};
    }

    ChannelSet draw_channel_set(const Scenario &scenario, arma::uword m, arma::uword n, std::size_t k,
                                std::uint64_t seed)
    {
        scenario.validate();
        if (m < 1 || n < 1 || k < 1)
            throw domain_error("draw_channel_set: m, n and the user count must be at least 1");

        std::mt19937_64 rng(seed);
        std::normal_distribution<double> normal(0.0, 1.0);
        const double scale = 1.0 / std::numbers::sqrt2;

        // (g1 + i g2) / sqrt(2), column-major fill order
        auto draw = [&](arma::cx_mat &h)
        {
            h.set_size(n, m);
            for (arma::uword i = 0; i < h.n_elem; ++i)
            {
                const double re = normal(rng);
                const double im = normal(rng);
                h(i) = {scale * re, scale * im};
            }
        };

        const DopplerParams doppler = doppler_params(scenario.speed_kmh, scenario);

        ChannelSet set;
        set.m = m;
        set.n = n;
        set.links.resize(k);
        arma::cx_mat error;
        for (std::size_t i = 0; i < k; ++i)
        {
            UserLink &link = set.links[i];
            link.zeta = large_scale_gain(scenario.distance_km(i), scenario);
            link.rho = doppler.rho;
            link.eps_sq = doppler.eps_sq;
            draw(link.h_delayed);
            draw(error);
            link.h_current = link.rho * link.h_delayed + std::sqrt(link.eps_sq) * error;
        }
        return set;
    }

    ChannelSet draw_channel_set(const Scenario &scenario, arma::uword m, arma::uword n, std::uint64_t seed)
    {
        return draw_channel_set(scenario, m, n, scenario.distances_km.size(), seed);
    }
}
