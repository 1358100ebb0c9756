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

#ifndef bpjee_linkcap_H
#define bpjee_linkcap_H

#include "bpjee/channel.hpp"

#include <armadillo>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace bpjee
{
    enum class Scheme
    {
        svd, // single user, SVD precoding over the strongest streams
        bd   // multiuser block diagonalization
    };

    // Transmission mode: scheme, active BS antennas, active users and their receive antennas
    struct Mode
    {
        Scheme scheme = Scheme::svd;
        std::size_t m_a = 1;
        std::size_t k_a = 1;
        std::vector<std::size_t> n_a = {1};
        std::vector<std::size_t> user_indices = {0};

        static Mode svd(std::size_t m_a, std::size_t n_a, std::size_t user = 0);
        static Mode bd(std::size_t m_a, std::size_t n_per_user, std::size_t k_a); // users 0 .. k_a-1

        // Accepts the labels produced by label(): "SISO", "SIMO", "SU-MIMO(4,2)", "MU-MIMO(6,2,3)";
        // `n` is the receive antenna count assumed for "SIMO"
        static Mode parse(std::string_view label, std::size_t n);

        std::size_t total_rx() const;
        std::size_t n_streams() const;                // min(M_a, N_a) for SVD, sum of N_a,i for BD
        std::size_t tx_per_user(std::size_t k) const; // M_a,k = M_a - sum_{i != k} N_a,i

        // Throws infeasible_mode_error unless the mode fits a BS with m antennas and k users with n antennas
        void validate(std::size_t m, std::size_t n, std::size_t k) const;

        std::string label() const;

        bool operator==(const Mode &) const = default;
    };

    // Active part of a user link: first N_a,k receive and first M_a transmit antennas, amplitude
    // scaled by sqrt(zeta) so that |entries|^2 carry the large-scale power gain
    struct ActiveLink
    {
        arma::cx_mat delayed;
        arma::cx_mat current;
        LinkStats stats;
    };

    std::vector<ActiveLink> active_links(const ChannelSet &set, const Mode &mode);

    struct PrecodeResult
    {
        std::vector<arma::cx_mat> precoders;    // SVD: one M_a x N_s matrix; BD: T_k of size M_a x N_a,k
        std::vector<arma::cx_mat> eff_delayed;  // delayed channel times precoder
    };

    // Rate of the form  W * [ sum_gains log2(1 + P s / (N0 W + P q)) - sum_losses log2(...) + offset ]
    // with P the total transmit power. Every capacity and instantaneous estimator reduces to this
    // after one eigen-decomposition, so repeated evaluation inside the optimizer is cheap.
    struct RateTerm
    {
        double signal = 0.0;       // per-watt received signal gain of one eigenmode (already / N_s)
        double interference = 0.0; // per-watt interference power added to the noise
    };

    struct RateProfile
    {
        std::vector<RateTerm> gains;
        std::vector<RateTerm> losses;
        double offset = 0.0; // bits/s/Hz independent of the transmit power

        double rate(double p_t, double w, double n0) const;
        double d_rate_d_power(double p_t, double w, double n0) const;
        double d_rate_d_bandwidth(double p_t, double w, double n0) const;
    };

    // ---- SU-MIMO with SVD ---------------------------------------------------------------------

    // First n_s right singular vectors of the delayed channel
    PrecodeResult svd_precode(const arma::cx_mat &h_delayed_scaled, std::size_t n_s);

    // W sum_i log2(1 + P_t / (N_s N0 W) lambda_i^2), lambda_i singular values of H[n] V
    double svd_capacity(const arma::cx_mat &h_current_scaled, const arma::cx_mat &v, double p_t, double w,
                        double n0, std::size_t n_s);

    // Transmitter-side estimate: the same formula with the singular values of the delayed channel
    double estimate_svd(const arma::cx_mat &h_delayed_scaled, double p_t, double w, double n0, std::size_t n_s);

    RateProfile svd_capacity_profile(const arma::cx_mat &h_current_scaled, const arma::cx_mat &v, std::size_t n_s);
    RateProfile estimate_svd_profile(const arma::cx_mat &h_delayed_scaled, std::size_t n_s);

    // ---- MU-MIMO with BD ----------------------------------------------------------------------

    // Null-space precoders designed on the delayed channels (one M_a x N_a,k matrix per active user).
    // T_k = V0_k * Vbar_k where V0_k spans the null space of the other users' stacked channels and
    // Vbar_k holds the top N_a,k right singular vectors of H_k V0_k.
    PrecodeResult bd_precode(std::span<const arma::cx_mat> delayed_scaled, const Mode &mode);

    // Perfect CSIT: precoders built from the same channels that carry the data
    double bd_capacity_perfect(std::span<const arma::cx_mat> current_scaled, std::span<const arma::cx_mat> precoders,
                               double p_t, double w, double n0, std::size_t n_s);

    // Delayed CSIT: precoders from the delayed channels, residual inter-user interference
    // E_k [T_i]_{i != k} treated as colored noise R_k
    double bd_capacity_delayed(std::span<const ActiveLink> links, const PrecodeResult &precode, double p_t, double w,
                               double n0, const Mode &mode);

    RateProfile bd_capacity_perfect_profile(std::span<const arma::cx_mat> current_scaled,
                                            std::span<const arma::cx_mat> precoders, std::size_t n_s);
    RateProfile bd_capacity_delayed_profile(std::span<const ActiveLink> links, const PrecodeResult &precode,
                                            const Mode &mode);

    // Upper bound on the delayed-CSIT rate loss:
    // W sum_k N_a,k log2(1 + sum_{i != k} N_a,i P_t zeta_k eps_k^2 / (N0 W N_s))
    double rate_loss_upper(const Mode &mode, std::span<const LinkStats> links, double p_t, double w, double n0);

    // Estimators evaluated from the delayed effective channels H_eff,k[n-D] and link statistics.
    // zhang = perfect-CSIT estimate minus rate_loss_upper (can be negative),
    // lower = interference-inflated noise inside the log-det,
    // upper = lower + W sum_k (N_a,k / M_a) log2(e).
    double estimate_bd_zhang(std::span<const arma::cx_mat> eff_delayed, double p_t, double w, double n0,
                             const Mode &mode, std::span<const LinkStats> links);
    double estimate_bd_lower(std::span<const arma::cx_mat> eff_delayed, double p_t, double w, double n0,
                             const Mode &mode, std::span<const LinkStats> links);
    double estimate_bd_upper(std::span<const arma::cx_mat> eff_delayed, double p_t, double w, double n0,
                             const Mode &mode, std::span<const LinkStats> links);

    RateProfile estimate_bd_zhang_profile(std::span<const arma::cx_mat> eff_delayed, const Mode &mode,
                                          std::span<const LinkStats> links);
    RateProfile estimate_bd_lower_profile(std::span<const arma::cx_mat> eff_delayed, const Mode &mode,
                                          std::span<const LinkStats> links);
    RateProfile estimate_bd_upper_profile(std::span<const arma::cx_mat> eff_delayed, const Mode &mode,
                                          std::span<const LinkStats> links);

    // Stats of the active users, in mode order
    std::vector<LinkStats> link_stats(std::span<const ActiveLink> links);
}

#endif
