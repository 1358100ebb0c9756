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

#include "bpjee/ergodic.hpp"
#include "bpjee/errors.hpp"

#include <cmath>
#include <numbers>
#include <vector>

namespace bpjee
{
    namespace
    {
        constexpr double gamma_floor = 1e-10;

        void check_rate_args(double p_t, double w, double n0)
        {
            if (!(w > 0.0) || !(n0 > 0.0))
                throw domain_error("ergodic: bandwidth and noise density must be positive");
            if (!(p_t >= 0.0))
                throw domain_error("ergodic: transmit power must be nonnegative");
        }

        struct SuShape
        {
            double beta;
            std::size_t n_rx;
        };

        SuShape su_shape(const Mode &mode)
        {
            if (mode.scheme != Scheme::svd)
                throw precondition_error("ergodic_su: mode is not SVD");
            const double m_a = double(mode.m_a), n_a = double(mode.n_a.front());
            if (m_a >= n_a)
                return {m_a / n_a, mode.n_a.front()};
            return {n_a / m_a, mode.m_a};
        }

        struct BdUser
        {
            double beta;            // M_a,k / N_a,k
            std::size_t n_rx;       // N_a,k
            double zeta;
            double leak_per_watt;   // sum_{i != k} N_a,i zeta_k eps_k^2 / N_s
            double gap_bits;        // (N_a,k / M_a,k) log2(e)
        };

        std::vector<BdUser> bd_users(const Mode &mode, std::span<const LinkStats> links)
        {
            if (mode.scheme != Scheme::bd)
                throw precondition_error("ergodic BD: mode is not BD");
            if (links.size() != mode.k_a)
                throw domain_error("ergodic BD: one link statistic per active user required");
            if (mode.k_a < 2)
                throw infeasible_mode_error(mode.label() + ": BD needs at least two users");
            const double n_s = double(mode.n_streams());
            std::vector<BdUser> users;
            users.reserve(mode.k_a);
            for (std::size_t k = 0; k < mode.k_a; ++k)
            {
                const std::size_t m_ak = mode.tx_per_user(k);
                if (m_ak < mode.n_a[k])
                    throw infeasible_mode_error(mode.label() + ": M_a,k < N_a,k for user " + std::to_string(k));
                const double others = double(mode.total_rx() - mode.n_a[k]);
                users.push_back({double(m_ak) / double(mode.n_a[k]), mode.n_a[k], links[k].zeta,
                                 others * links[k].zeta * links[k].eps_sq / n_s,
                                 double(mode.n_a[k]) / double(m_ak) * std::numbers::log2e});
            }
            return users;
        }

        // Sum over users of c_iso with inflated (inflate = true) or plain SNR, and its P_t derivative
        double bd_sum(const std::vector<BdUser> &users, double p_t, double w, double n0, bool inflate)
        {
            const double noise = n0 * w;
            double bits = 0.0;
            for (const auto &u : users)
            {
                const double gamma = p_t * u.zeta / (noise + (inflate ? p_t * u.leak_per_watt : 0.0));
                bits += c_iso(u.beta, u.beta * gamma, u.n_rx);
            }
            return w * bits;
        }

        double bd_sum_dp(const std::vector<BdUser> &users, double p_t, double w, double n0, bool inflate)
        {
            const double noise = n0 * w;
            double d = 0.0;
            for (const auto &u : users)
            {
                const double leak = inflate ? u.leak_per_watt : 0.0;
                const double den = noise + p_t * leak;
                const double gamma = p_t * u.zeta / den;
                const double dgamma = u.zeta * noise / (den * den);
                d += c_iso_dgamma(u.beta, u.beta * gamma, u.n_rx) * u.beta * dgamma;
            }
            return w * d;
        }

        double gap_loss(const std::vector<BdUser> &users, double p_t, double w, double n0)
        {
            double bits = 0.0;
            for (const auto &u : users)
                bits += double(u.n_rx) * std::log1p(p_t * u.leak_per_watt / (n0 * w));
            return w * bits / std::numbers::ln2;
        }

        double gap_loss_dp(const std::vector<BdUser> &users, double p_t, double w, double n0)
        {
            const double noise = n0 * w;
            double d = 0.0;
            for (const auto &u : users)
                d += double(u.n_rx) * u.leak_per_watt / (noise + p_t * u.leak_per_watt);
            return w * d / std::numbers::ln2;
        }

        double gap_offset(const std::vector<BdUser> &users)
        {
            double bits = 0.0;
            for (const auto &u : users)
                bits += u.gap_bits;
            return bits;
        }
    }

    double f_correction(double x, double y)
    {
        if (!(x >= 0.0) || !(y >= 0.0))
            throw domain_error("f_correction: arguments must be nonnegative");
        // a - b = 4 y sqrt(x) / (a + b) avoids cancellation for small y
        const double sx = std::sqrt(x);
        const double a = std::sqrt(1.0 + y * (1.0 + sx) * (1.0 + sx));
        const double b = std::sqrt(1.0 + y * (1.0 - sx) * (1.0 - sx));
        const double s = a + b;
        return 4.0 * y * y * x / (s * s);
    }

    double c_iso(double beta, double gamma, std::size_t n_rx)
    {
        if (!(beta > 0.0) || !(gamma >= 0.0))
            throw domain_error("c_iso: beta must be positive and gamma nonnegative");
        if (gamma < gamma_floor)
            return 0.0;
        const double f = f_correction(beta, gamma / beta);
        const double bits = std::log2(1.0 + gamma - f) + beta * std::log2(1.0 + gamma / beta - f) -
                            beta * std::numbers::log2e * f / gamma;
        return double(n_rx) * bits;
    }

    double c_iso_dgamma(double beta, double gamma, std::size_t n_rx)
    {
        if (!(beta > 0.0) || !(gamma >= 0.0))
            throw domain_error("c_iso_dgamma: beta must be positive and gamma nonnegative");
        if (gamma < gamma_floor)
        {
            // beta F(beta, g / beta) / g^2 -> 1 as g -> 0
            return double(n_rx) * std::numbers::log2e;
        }
        const double f = f_correction(beta, gamma / beta);
        return double(n_rx) * std::numbers::log2e * beta * f / (gamma * gamma);
    }

    double ergodic_su(const Mode &mode, const LinkStats &link, double p_t, double w, double n0)
    {
        check_rate_args(p_t, w, n0);
        const SuShape shape = su_shape(mode);
        const double gamma = p_t * link.zeta / (n0 * w);
        return w * c_iso(shape.beta, shape.beta * gamma, shape.n_rx);
    }

    double ergodic_bd_lower(const Mode &mode, std::span<const LinkStats> links, double p_t, double w, double n0)
    {
        check_rate_args(p_t, w, n0);
        return bd_sum(bd_users(mode, links), p_t, w, n0, true);
    }

    double ergodic_bd_upper(const Mode &mode, std::span<const LinkStats> links, double p_t, double w, double n0)
    {
        check_rate_args(p_t, w, n0);
        const auto users = bd_users(mode, links);
        return bd_sum(users, p_t, w, n0, true) + w * gap_offset(users);
    }

    double ergodic_bd_zhang(const Mode &mode, std::span<const LinkStats> links, double p_t, double w, double n0)
    {
        check_rate_args(p_t, w, n0);
        const auto users = bd_users(mode, links);
        return bd_sum(users, p_t, w, n0, false) - gap_loss(users, p_t, w, n0);
    }

    ConcaveFn ergodic_su_in_power(const Mode &mode, const LinkStats &link, double w, double n0)
    {
        check_rate_args(0.0, w, n0);
        const SuShape shape = su_shape(mode);
        const double per_watt = link.zeta / (n0 * w);
        ConcaveFn fn;
        fn.eval = [=](double p) { return w * c_iso(shape.beta, shape.beta * p * per_watt, shape.n_rx); };
        fn.deriv = [=](double p)
        { return w * c_iso_dgamma(shape.beta, shape.beta * p * per_watt, shape.n_rx) * shape.beta * per_watt; };
        return fn;
    }

    ConcaveFn ergodic_bd_in_power(ErgodicBound bound, const Mode &mode, std::span<const LinkStats> links, double w,
                                  double n0)
    {
        check_rate_args(0.0, w, n0);
        auto users = bd_users(mode, links);
        ConcaveFn fn;
        switch (bound)
        {
        case ErgodicBound::lower:
            fn.eval = [=](double p) { return bd_sum(users, p, w, n0, true); };
            fn.deriv = [=](double p) { return bd_sum_dp(users, p, w, n0, true); };
            break;
        case ErgodicBound::upper:
        {
            const double offset = w * gap_offset(users);
            fn.eval = [=](double p) { return bd_sum(users, p, w, n0, true) + offset; };
            fn.deriv = [=](double p) { return bd_sum_dp(users, p, w, n0, true); };
            break;
        }
        case ErgodicBound::zhang:
            fn.eval = [=](double p) { return bd_sum(users, p, w, n0, false) - gap_loss(users, p, w, n0); };
            fn.deriv = [=](double p)
            { return bd_sum_dp(users, p, w, n0, false) - gap_loss_dp(users, p, w, n0); };
            break;
        }
        return fn;
    }
}
