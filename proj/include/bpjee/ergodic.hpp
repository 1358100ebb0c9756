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

#ifndef bpjee_ergodic_H
#define bpjee_ergodic_H

#include "bpjee/channel.hpp"
#include "bpjee/linkcap.hpp"
#include "bpjee/numerics.hpp"

#include <cstddef>
#include <span>

namespace bpjee
{
    // Large-system correction term F(x, y) = 1/4 [sqrt(1 + y (1 + sqrt x)^2) - sqrt(1 + y (1 - sqrt x)^2)]^2
    double f_correction(double x, double y);

    // Asymptotic spectral efficiency of an i.i.d. Rayleigh link with n_rx receive antennas,
    // antenna ratio beta (transmit / receive) and SNR gamma, in bits/s/Hz:
    // n_rx { log2(1 + gamma - F) + beta log2(1 + gamma/beta - F) - beta log2(e) F / gamma },
    // F = F(beta, gamma / beta). Returns 0 for gamma < 1e-10 (removable singularity).
    double c_iso(double beta, double gamma, std::size_t n_rx);

    // d c_iso / d gamma = n_rx log2(e) beta F(beta, gamma/beta) / gamma^2
    double c_iso_dgamma(double beta, double gamma, std::size_t n_rx);

    // SVD mode with gamma = P_t zeta / (N0 W). The larger of (M_a, N_a) over the smaller one is the
    // antenna ratio, the smaller one the stream count.
    double ergodic_su(const Mode &mode, const LinkStats &link, double p_t, double w, double n0);

    // BD modes, per user k: M_a,k = M_a - sum_{i != k} N_a,i, beta_k = M_a,k / N_a,k,
    // gamma_k = P_t zeta_k / (N0 W + sum_{i != k} N_a,i P_t zeta_k eps_k^2 / N_s).
    // lower = W sum_k c_iso(beta_k, beta_k gamma_k, N_a,k)
    // upper = lower + W sum_k (N_a,k / M_a,k) log2(e)
    // zhang = W sum_k c_iso(beta_k, beta_k P_t zeta_k / (N0 W), N_a,k) - rate_loss_upper
    // Throw infeasible_mode_error when M_a,k < N_a,k.
    double ergodic_bd_lower(const Mode &mode, std::span<const LinkStats> links, double p_t, double w, double n0);
    double ergodic_bd_upper(const Mode &mode, std::span<const LinkStats> links, double p_t, double w, double n0);
    double ergodic_bd_zhang(const Mode &mode, std::span<const LinkStats> links, double p_t, double w, double n0);

    enum class ErgodicBound
    {
        lower,
        upper,
        zhang
    };

    // Capacity as a function of P_t at fixed W, with analytic derivative
    ConcaveFn ergodic_su_in_power(const Mode &mode, const LinkStats &link, double w, double n0);
    ConcaveFn ergodic_bd_in_power(ErgodicBound bound, const Mode &mode, std::span<const LinkStats> links, double w,
                                  double n0);
}

#endif
